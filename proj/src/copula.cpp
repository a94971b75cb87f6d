#include "redundalloc/copula.hpp"

#include <algorithm>
#include <cmath>

#include "redundalloc/errors.hpp"

namespace rda {

namespace {

// Arguments are clamped away from {0, 1} so log terms stay finite; 1e-16
// below one keeps -ln(u) exact to first order.
constexpr double kLo = 1e-300;
constexpr double kHi = 1.0 - 1e-16;

double clamp_u(double u) { return std::clamp(u, kLo, kHi); }

double neglog(double u) { return -std::log(clamp_u(u)); }

}  // namespace

SurvivalCopula SurvivalCopula::independence() {
  return SurvivalCopula(Family::independence, 0.0);
}

SurvivalCopula SurvivalCopula::gumbel(double alpha) {
  require(alpha >= 1.0, errc::bad_parameter, "gumbel alpha must be >= 1");
  return SurvivalCopula(Family::gumbel, alpha);
}

SurvivalCopula SurvivalCopula::clayton(double alpha) {
  require(alpha > 0.0, errc::bad_parameter, "clayton alpha must be > 0");
  return SurvivalCopula(Family::clayton, alpha);
}

SurvivalCopula SurvivalCopula::custom(
    std::function<double(std::span<const double>)> cdf) {
  SurvivalCopula c(Family::custom, 0.0);
  c.cdf_ = std::move(cdf);
  return c;
}

double SurvivalCopula::eval(std::span<const ArgBlock> args) const {
  switch (family_) {
    case Family::independence: {
      double p = 1.0;
      for (const auto& b : args) p *= std::pow(clamp_u(b.value), b.count);
      return p;
    }
    case Family::gumbel: {
      if (alpha_ == 1.0) {
        double p = 1.0;
        for (const auto& b : args) p *= std::pow(clamp_u(b.value), b.count);
        return p;
      }
      double s = 0.0;
      for (const auto& b : args)
        s += b.count * std::pow(neglog(b.value), alpha_);
      return std::exp(-std::pow(s, 1.0 / alpha_));
    }
    case Family::clayton: {
      // (sum u^(-1/a) - n + 1)^(-a) in log space: with x_k = -ln u_k,
      //   S = sum exp(x_k / a) - (n - 1), evaluated relative to max x_k / a
      // so small alpha cannot overflow.
      double xmax = 0.0;
      int n = 0;
      for (const auto& b : args) {
        if (b.count == 0) continue;
        xmax = std::max(xmax, neglog(b.value) / alpha_);
        n += b.count;
      }
      if (n == 0) return 1.0;
      double s = 0.0;
      for (const auto& b : args) {
        if (b.count == 0) continue;
        s += b.count * std::exp(neglog(b.value) / alpha_ - xmax);
      }
      s -= (n - 1) * std::exp(-xmax);
      // s > 0 always: sum exp(x/a) >= n - (n-1) pointwise.
      return std::exp(-alpha_ * (xmax + std::log(s)));
    }
    case Family::custom: {
      std::vector<double> u;
      for (const auto& b : args)
        u.insert(u.end(), b.count, clamp_u(b.value));
      return cdf_(u);
    }
  }
  return 0.0;
}

double SurvivalCopula::eval(std::span<const double> u) const {
  std::vector<ArgBlock> blocks;
  blocks.reserve(u.size());
  for (double x : u) blocks.push_back({x, 1});
  return eval(blocks);
}

double SurvivalCopula::partial(std::span<const ArgBlock> args, int k) const {
  require(k >= 0 && k < (int)args.size() && args[k].count >= 1,
          errc::bad_index, "partial requires a populated block");
  const double uk = clamp_u(args[k].value);
  switch (family_) {
    case Family::independence: {
      double p = 1.0;
      for (int i = 0; i < (int)args.size(); ++i) {
        int c = args[i].count - (i == k ? 1 : 0);
        p *= std::pow(clamp_u(args[i].value), c);
      }
      return p;
    }
    case Family::gumbel: {
      if (alpha_ == 1.0) {
        double p = 1.0;
        for (int i = 0; i < (int)args.size(); ++i) {
          int c = args[i].count - (i == k ? 1 : 0);
          p *= std::pow(clamp_u(args[i].value), c);
        }
        return p;
      }
      // dC/du_k = C * S^(1/a - 1) * x_k^(a-1) / u_k with S = sum x^a.
      // Computed as exp(x_k - S^(1/a)) * S^(1/a-1) * x_k^(a-1); the exponent
      // is <= 0 because S^(1/a) >= max x >= x_k.
      double s = 0.0;
      for (const auto& b : args)
        s += b.count * std::pow(neglog(b.value), alpha_);
      const double xk = neglog(args[k].value);
      if (s <= 0.0) return 0.0;
      return std::exp(xk - std::pow(s, 1.0 / alpha_)) *
             std::pow(s, 1.0 / alpha_ - 1.0) * std::pow(xk, alpha_ - 1.0);
    }
    case Family::clayton: {
      // dC/du_k = S^(-a-1) * u_k^(-1/a - 1): log space via ln S as in eval.
      double xmax = 0.0;
      int n = 0;
      for (const auto& b : args) {
        if (b.count == 0) continue;
        xmax = std::max(xmax, neglog(b.value) / alpha_);
        n += b.count;
      }
      double s = 0.0;
      for (const auto& b : args) {
        if (b.count == 0) continue;
        s += b.count * std::exp(neglog(b.value) / alpha_ - xmax);
      }
      s -= (n - 1) * std::exp(-xmax);
      const double log_s = xmax + std::log(s);
      const double xk = neglog(args[k].value);
      return std::exp(-(alpha_ + 1.0) * log_s + (1.0 / alpha_ + 1.0) * xk);
    }
    case Family::custom: {
      // Central difference with relative step 1e-6 on the k-th slot.
      std::vector<double> u;
      int slot = -1;
      for (int i = 0; i < (int)args.size(); ++i) {
        for (int c = 0; c < args[i].count; ++c) u.push_back(clamp_u(args[i].value));
        if (i == k) slot = (int)u.size() - 1;
      }
      require(u[slot] > kLo && u[slot] < 1.0, errc::boundary_argument,
              "numeric partial needs an interior argument");
      const double h = std::max(1e-9, 1e-6 * u[slot]);
      std::vector<double> up = u, dn = u;
      up[slot] = std::min(uk + h, kHi);
      dn[slot] = std::max(uk - h, kLo);
      return (cdf_(up) - cdf_(dn)) / (up[slot] - dn[slot]);
    }
  }
  return 0.0;
}

double SurvivalCopula::partial(std::span<const double> u, int k) const {
  std::vector<ArgBlock> blocks;
  blocks.reserve(u.size());
  for (double x : u) blocks.push_back({x, 1});
  return partial(blocks, k);
}

void SurvivalCopula::sample(int dim, Rng& rng, std::span<double> out) const {
  require(dim >= 1 && (int)out.size() >= dim, errc::bad_parameter,
          "sample needs dim >= 1 and room in out");
  switch (family_) {
    case Family::independence: {
      for (int i = 0; i < dim; ++i) out[i] = rng.uniform_open();
      return;
    }
    case Family::gumbel: {
      if (alpha_ == 1.0) {
        for (int i = 0; i < dim; ++i) out[i] = rng.uniform_open();
        return;
      }
      // Positive stable frailty V with Laplace transform exp(-s^beta),
      // beta = 1/alpha, via the Chambers-Mallows-Stuck/Kanter form; then
      // U_k = exp(-(E_k / V)^beta) has the gumbel copula as its CDF.
      const double beta = 1.0 / alpha_;
      const double theta = M_PI * rng.uniform_open();
      const double w = rng.exponential();
      const double V = std::pow(std::sin(beta * theta), 1.0) /
                       std::pow(std::sin(theta), 1.0 / beta) *
                       std::pow(std::sin((1.0 - beta) * theta) / w,
                                (1.0 - beta) / beta);
      for (int i = 0; i < dim; ++i)
        out[i] = std::exp(-std::pow(rng.exponential() / V, beta));
      return;
    }
    case Family::clayton: {
      // Gamma(alpha) frailty: U_k = (1 + E_k / V)^(-alpha).
      const double V = rng.gamma(alpha_);
      for (int i = 0; i < dim; ++i)
        out[i] = std::pow(1.0 + rng.exponential() / V, -alpha_);
      return;
    }
    case Family::custom:
      fail(errc::bad_parameter, "custom copulas do not support sampling");
  }
}

std::string SurvivalCopula::family_name() const {
  switch (family_) {
    case Family::independence: return "independence";
    case Family::gumbel: return "gumbel";
    case Family::clayton: return "clayton";
    case Family::custom: return "custom";
  }
  return "?";
}

}  // namespace rda
