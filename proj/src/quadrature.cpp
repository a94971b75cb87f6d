#include "redundalloc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "redundalloc/errors.hpp"

namespace rda::quad {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
constexpr double kXgk[8] = {
    .991455371120812639206854697526329, .949107912342758524526189684047851,
    .864864423359769072789712788640926, .741531185599394439863864773280788,
    .586087235467691130294144838258730, .405845151377397166906606412076961,
    .207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    .022935322010529224963732008058970, .063092092629978553290700663189204,
    .104790010322250183839876322541518, .140653259715525918745189590510238,
    .169004726639267902826583426598550, .190350578064785409913256402421014,
    .204432940075298892414161999234649, .209482141084727828012999174891714};
constexpr double kWg[4] = {
    .129484966168869693270611432679082, .279705391489276667901467771423780,
    .381830050505118944950369775488975, .417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate_panel(const Fn& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  double resabs = kWgk[7] * std::fabs(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  // QUADPACK-style error heuristic, capped by the crude bound.
  const double crude = std::fabs(resk - resg) * std::fabs(h);
  double err = crude;
  const double scale = resabs * std::fabs(h);
  if (scale > 0.0 && crude > 0.0)
    err = std::min(crude, scale * std::pow(200.0 * crude / scale, 1.5));
  return {a, b, resk * h, err};
}

}  // namespace

Result integrate_interval(const Fn& f, double a, double b, Options opt) {
  require(a < b, errc::bad_parameter, "integration bounds must satisfy a < b");
  std::priority_queue<Panel> panels;
  Panel first = evaluate_panel(f, a, b);
  double total = first.value;
  double total_err = first.error;
  panels.push(first);
  int count = 1;
  while (total_err > opt.abs_tol &&
         total_err > opt.rel_tol * std::fabs(total)) {
    if (count >= opt.max_panels)
      fail(errc::quadrature_failure,
           "tolerance not reached at panel cap " +
               std::to_string(opt.max_panels));
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b))
      fail(errc::quadrature_failure, "panel collapsed below double precision");
    Panel left = evaluate_panel(f, worst.a, mid);
    Panel right = evaluate_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++count;
  }
  if (!std::isfinite(total))
    fail(errc::quadrature_failure, "integrand produced a non-finite value");
  return {total, total_err, count};
}

Result integrate_halfline(const Fn& f, Options opt) {
  constexpr double kEps = 1e-12;
  auto transformed = [&f](double x) {
    const double om = 1.0 - x;
    const double t = x / om;
    return f(t) / (om * om);
  };
  // Divergence probe: a tail f ~ t^(-a) maps to (1-x)^(a-2), so the growth
  // exponent between two probe points estimates 2 - a; a <= 1 diverges.
  const double probe_prev = std::fabs(transformed(1.0 - 1e-6));
  const double probe_tail = std::fabs(transformed(1.0 - 1e-9));
  if (probe_tail > 1e-12 && probe_prev > 1e-300) {
    const double exponent =
        std::log(probe_tail / probe_prev) / std::log(1e3);
    if (exponent > 0.98)
      fail(errc::divergence_suspected,
           "integrand does not decay on the half-line tail");
  }
  return integrate_interval(transformed, 0.0, 1.0 - kEps, opt);
}

MinResult minimize_scalar(const Fn& f, double lo, double hi, double tol) {
  require(lo < hi, errc::bad_parameter, "bracket must satisfy lo < hi");
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  int evals = 2;
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
    ++evals;
  }
  double xb = (f1 <= f2) ? x1 : x2;
  double fb = std::min(f1, f2);
  // One parabolic refinement through (a, xb, b).
  {
    const double fa = f(a), fbb = f(b);
    evals += 2;
    const double d1 = (xb - a), d2 = (xb - b);
    const double num = d1 * d1 * (fb - fbb) - d2 * d2 * (fb - fa);
    const double den = d1 * (fb - fbb) - d2 * (fb - fa);
    if (std::fabs(den) > 0) {
      const double cand = xb - 0.5 * num / den;
      if (cand > a && cand < b) {
        const double fc = f(cand);
        ++evals;
        if (fc < fb) {
          xb = cand;
          fb = fc;
        }
      }
    }
    if (fa < fb) {
      xb = a;
      fb = fa;
    }
    if (fbb < fb) {
      xb = b;
      fb = fbb;
    }
  }
  const bool boundary =
      std::fabs(xb - lo) <= tol || std::fabs(xb - hi) <= tol;
  return {xb, fb, boundary, evals};
}

}  // namespace rda::quad
