#include "redundalloc/expectations.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "detail_sum.hpp"
#include "redundalloc/errors.hpp"
#include "redundalloc/quadrature.hpp"
#include "redundalloc/reliability.hpp"

namespace rda {

using detail::binom;
using detail::KahanSum;
using detail::parity;

namespace {

void check_type(const SystemModel& model, int i) {
  require(i >= 0 && i < model.types(), errc::bad_index,
          "type index out of range");
}

// Odometer increment over [0, hi_k] digits; returns false on wrap-around.
bool next_odometer(std::vector<int>& digits, std::span<const int> hi) {
  for (int k = (int)digits.size() - 1; k >= 0; --k) {
    if (++digits[k] <= hi[k]) return true;
    digits[k] = 0;
  }
  return false;
}

// Collapsed coefficients for the death-time expansion of E(X_i(T)):
// one weight per repeat-count vector a (a_k = copula repeats of type k,
// excluding the marked component), folding the signature, the outer
// binomials and the inclusion-exclusion sign.
struct DeathExpansion {
  std::vector<int> cap;        // a_k upper bounds: n_k, except n_i - 1
  std::vector<double> coeff;   // flat over prod (cap_k + 1)

  DeathExpansion(const SystemStructure& st, int i) {
    const auto& n = st.counts();
    const int L = st.types();
    cap.assign(n.begin(), n.end());
    cap[i] -= 1;
    std::size_t size = 1;
    for (int c : cap) size *= (std::size_t)(c + 1);
    coeff.assign(size, 0.0);
    auto flat = [&](std::span<const int> a) {
      std::size_t idx = 0;
      for (int k = 0; k < L; ++k) idx = idx * (cap[k] + 1) + a[k];
      return idx;
    };
    std::vector<int> m(L, 0), phi_arg(L);
    do {
      for (int k = 0; k < L; ++k) phi_arg[k] = m[k] + (k == i ? 1 : 0);
      const double ph = st.phi(phi_arg);
      if (ph == 0.0) continue;
      double outer = ph;
      for (int k = 0; k < L; ++k)
        outer *= binom(k == i ? n[k] - 1 : n[k], m[k]);
      std::vector<int> j(L, 0), jcap(L), a(L);
      for (int k = 0; k < L; ++k) jcap[k] = cap[k] - m[k];
      do {
        double term = outer;
        int sgn = 0;
        for (int k = 0; k < L; ++k) {
          term *= binom(jcap[k], j[k]);
          sgn += j[k];
          a[k] = m[k] + j[k];
        }
        coeff[flat(a)] += parity(sgn) * term;
      } while (next_odometer(j, jcap));
    } while (next_odometer(m, cap));
  }
};

}  // namespace

double expected_failed_at_failure(const SystemModel& model, int i) {
  check_type(model, i);
  const auto& st = model.structure;
  const int L = st.types();
  const int ni = st.counts()[i];
  DeathExpansion exp_(st, i);

  auto integrand = [&](double t) {
    std::vector<double> fbar(L);
    for (int k = 0; k < L; ++k) fbar[k] = model.marginals[k].reliability(t);
    const double dens = model.marginals[i].density(t);
    if (dens == 0.0) return 0.0;
    std::vector<ArgBlock> blocks(L);
    std::vector<int> a(L, 0);
    KahanSum sum;
    std::size_t idx = 0;
    do {
      const double c = exp_.coeff[idx++];
      if (c != 0.0) {
        for (int k = 0; k < L; ++k)
          blocks[k] = {fbar[k], a[k] + (k == i ? 1 : 0)};
        sum.add(c * model.copula.partial(blocks, i));
      }
    } while (next_odometer(a, exp_.cap));
    return sum.value() * dens;
  };
  quad::Options opt;
  opt.abs_tol = 1e-10;
  opt.rel_tol = 1e-8;
  return ni * quad::integrate_halfline(integrand, opt).value;
}

double expected_failed_at_failure_indep(const SystemModel& model, int i) {
  check_type(model, i);
  require(model.copula.is_independence(), errc::wrong_copula,
          "independent-case path requires the independence copula");
  const auto& st = model.structure;
  const auto& n = st.counts();
  const int L = st.types();
  const int ni = n[i];

  struct Term {
    double weight;
    std::vector<int> m;
  };
  std::vector<Term> terms;
  std::vector<int> cap(n.begin(), n.end());
  cap[i] -= 1;
  std::vector<int> m(L, 0), phi_arg(L);
  do {
    for (int k = 0; k < L; ++k) phi_arg[k] = m[k] + (k == i ? 1 : 0);
    const double ph = st.phi(phi_arg);
    if (ph == 0.0) continue;
    double w = ph;
    for (int k = 0; k < L; ++k) w *= binom(k == i ? n[k] - 1 : n[k], m[k]);
    terms.push_back({w, m});
  } while (next_odometer(m, cap));

  auto integrand = [&](double t) {
    std::vector<double> fbar(L), f(L);
    for (int k = 0; k < L; ++k) {
      fbar[k] = model.marginals[k].reliability(t);
      f[k] = 1.0 - fbar[k];
    }
    const double dens = model.marginals[i].density(t);
    if (dens == 0.0) return 0.0;
    KahanSum sum;
    for (const auto& term : terms) {
      double p = term.weight;
      for (int k = 0; k < L; ++k) {
        const int dead = n[k] - term.m[k] - (k == i ? 1 : 0);
        p *= std::pow(fbar[k], term.m[k]) * std::pow(f[k], dead);
      }
      sum.add(p);
    }
    return sum.value() * dens;
  };
  quad::Options opt;
  opt.abs_tol = 1e-10;
  opt.rel_tol = 1e-8;
  return ni * quad::integrate_halfline(integrand, opt).value;
}

namespace {

double survival_at(const SystemModel& model, double tau) {
  return ReliabilityKernel(model).survival(tau);
}

double en_tau_general(const SystemModel& model, int i, double tau,
                      double fbar_tau_sys) {
  const auto& st = model.structure;
  const auto& n = st.counts();
  const int L = st.types();
  std::vector<double> fbar(L);
  for (int k = 0; k < L; ++k) fbar[k] = model.marginals[k].reliability(tau);

  std::vector<int> j(L, 0), alive(L), b(L);
  std::vector<ArgBlock> blocks(L);
  KahanSum total;
  do {
    if (j[i] == 0) continue;
    for (int k = 0; k < L; ++k) alive[k] = n[k] - j[k];
    const double ph = st.phi(alive);
    if (ph == 0.0) continue;
    double outer = j[i] * ph;
    for (int k = 0; k < L; ++k) outer *= binom(n[k], j[k]);
    std::fill(b.begin(), b.end(), 0);
    KahanSum bsum;
    do {
      double term = 1.0;
      int sgn = 0;
      for (int k = 0; k < L; ++k) {
        term *= binom(j[k], b[k]);
        sgn += b[k];
        blocks[k] = {fbar[k], n[k] - j[k] + b[k]};
      }
      bsum.add(parity(sgn) * term * model.copula.eval(blocks));
    } while (next_odometer(b, j));
    total.add(outer * bsum.value());
  } while (next_odometer(j, n));
  return total.value() / fbar_tau_sys;
}

}  // namespace

double expected_failures_by_tau_given_survival(const SystemModel& model,
                                               int i, double tau) {
  check_type(model, i);
  require(tau > 0.0, errc::out_of_range, "tau must be > 0");
  const double fbar_tau = survival_at(model, tau);
  require(fbar_tau > 1e-12, errc::zero_survival,
          "system survival at tau is numerically zero");
  return en_tau_general(model, i, tau, fbar_tau);
}

double expected_failures_by_tau_given_survival_indep(const SystemModel& model,
                                                     int i, double tau) {
  check_type(model, i);
  require(model.copula.is_independence(), errc::wrong_copula,
          "independent-case path requires the independence copula");
  require(tau > 0.0, errc::out_of_range, "tau must be > 0");
  const auto& st = model.structure;
  const auto& n = st.counts();
  const int L = st.types();
  const double fbar_tau = survival_at(model, tau);
  require(fbar_tau > 1e-12, errc::zero_survival,
          "system survival at tau is numerically zero");
  std::vector<double> fbar(L);
  for (int k = 0; k < L; ++k) fbar[k] = model.marginals[k].reliability(tau);
  std::vector<int> j(L, 0), alive(L);
  KahanSum total;
  do {
    if (j[i] == 0) continue;
    for (int k = 0; k < L; ++k) alive[k] = n[k] - j[k];
    const double ph = st.phi(alive);
    if (ph == 0.0) continue;
    double term = j[i] * ph;
    for (int k = 0; k < L; ++k)
      term *= binom(n[k], j[k]) * std::pow(1.0 - fbar[k], j[k]) *
              std::pow(fbar[k], n[k] - j[k]);
    total.add(term);
  } while (next_odometer(j, n));
  return total.value() / fbar_tau;
}

namespace {

// Collapsed coefficients for the early-failure expansion of
// E(X_i(T) | T <= tau): one weight per pair of repeat-count vectors
// (A, B) with A_k arguments at Fbar_k(tau) and B_k at Fbar_k(s) (the marked
// component adds one more type-i argument at s). The six nested sums of the
// expansion fold into this table once per (structure, type, convention).
struct TauExpansion {
  std::vector<int> cap;       // per-type bound on A_k + B_k
  std::vector<double> coeff;  // flat over prod (cap_k + 1)^2, (A_k, B_k) digits
  int L;

  std::size_t flat(std::span<const int> A, std::span<const int> B) const {
    std::size_t idx = 0;
    for (int k = 0; k < L; ++k)
      idx = (idx * (cap[k] + 1) + A[k]) * (cap[k] + 1) + B[k];
    return idx;
  }

  TauExpansion(const SystemStructure& st, int i, MarkedState state) {
    const auto& n = st.counts();
    L = st.types();
    cap.assign(n.begin(), n.end());
    cap[i] -= 1;
    std::size_t size = 1;
    for (int c : cap) size *= (std::size_t)((c + 1) * (c + 1));
    coeff.assign(size, 0.0);

    std::vector<int> m(L, 0), phi_m(L), l(L), d(L), j(L), A(L), B(L);
    std::vector<int> lcap(L), dcap(L), jcap(L);
    do {
      for (int k = 0; k < L; ++k)
        phi_m[k] = m[k] + (k == i && state == MarkedState::counted_alive ? 1 : 0);
      const double phm = st.phi(phi_m);
      double outer = 1.0;
      for (int k = 0; k < L; ++k)
        outer *= binom(k == i ? n[k] - 1 : n[k], m[k]);
      for (int k = 0; k < L; ++k) lcap[k] = m[k];
      std::fill(l.begin(), l.end(), 0);
      do {
        const double bracket = phm - st.phi(l);
        if (bracket == 0.0) continue;
        double mid = outer * bracket;
        for (int k = 0; k < L; ++k) mid *= binom(m[k], l[k]);
        for (int k = 0; k < L; ++k) {
          dcap[k] = m[k] - l[k];
          jcap[k] = cap[k] - m[k];
        }
        std::fill(j.begin(), j.end(), 0);
        do {
          std::fill(d.begin(), d.end(), 0);
          double jterm = mid;
          int jsgn = 0;
          for (int k = 0; k < L; ++k) {
            jterm *= binom(jcap[k], j[k]);
            jsgn += j[k];
          }
          do {
            double term = jterm;
            int sgn = jsgn;
            for (int k = 0; k < L; ++k) {
              term *= binom(dcap[k], d[k]);
              sgn += d[k];
              A[k] = l[k] + d[k];
              B[k] = m[k] - l[k] + j[k] - d[k];
            }
            coeff[flat(A, B)] += parity(sgn) * term;
          } while (next_odometer(d, dcap));
        } while (next_odometer(j, jcap));
      } while (next_odometer(l, lcap));
    } while (next_odometer(m, cap));
  }
};

}  // namespace

double expected_failed_at_failure_given_early_failure(const SystemModel& model,
                                                      int i, double tau,
                                                      MarkedState state) {
  check_type(model, i);
  require(tau > 0.0, errc::out_of_range, "tau must be > 0");
  const auto& st = model.structure;
  const int L = st.types();
  const int ni = st.counts()[i];
  const double f_tau = 1.0 - survival_at(model, tau);
  require(f_tau > 1e-12, errc::zero_failure_probability,
          "system failure by tau has numerically zero probability");

  TauExpansion exp_(st, i, state);
  std::vector<double> fbar_tau(L);
  for (int k = 0; k < L; ++k)
    fbar_tau[k] = model.marginals[k].reliability(tau);

  auto integrand = [&](double s) {
    std::vector<double> fbar_s(L);
    for (int k = 0; k < L; ++k) fbar_s[k] = model.marginals[k].reliability(s);
    const double dens = model.marginals[i].density(s);
    if (dens == 0.0) return 0.0;
    std::vector<ArgBlock> blocks(2 * L);
    KahanSum sum;
    // iterate (A, B) jointly in the same digit order used by flat()
    std::size_t idx = 0;
    std::vector<int> digits(2 * L, 0);
    std::vector<int> hi(2 * L);
    for (int k = 0; k < L; ++k) hi[2 * k] = hi[2 * k + 1] = exp_.cap[k];
    do {
      const double c = exp_.coeff[idx++];
      if (c != 0.0) {
        for (int k = 0; k < L; ++k) {
          blocks[2 * k] = {fbar_tau[k], digits[2 * k]};
          blocks[2 * k + 1] = {fbar_s[k], digits[2 * k + 1] + (k == i ? 1 : 0)};
        }
        sum.add(c * model.copula.partial(blocks, 2 * i + 1));
      }
    } while (next_odometer(digits, hi));
    return sum.value() * dens;
  };
  quad::Options opt;
  opt.abs_tol = 1e-9;
  opt.rel_tol = 1e-8;
  const double integral = quad::integrate_interval(integrand, 0.0, tau, opt).value;
  return ni * integral / f_tau;
}

double expected_failed_at_failure_given_early_failure_indep(
    const SystemModel& model, int i, double tau, MarkedState state) {
  check_type(model, i);
  require(model.copula.is_independence(), errc::wrong_copula,
          "independent-case path requires the independence copula");
  require(tau > 0.0, errc::out_of_range, "tau must be > 0");
  const auto& st = model.structure;
  const auto& n = st.counts();
  const int L = st.types();
  const int ni = n[i];
  const double f_tau = 1.0 - survival_at(model, tau);
  require(f_tau > 1e-12, errc::zero_failure_probability,
          "system failure by tau has numerically zero probability");

  struct Term {
    double weight;
    std::vector<int> m, l;
  };
  std::vector<Term> terms;
  std::vector<int> cap(n.begin(), n.end());
  cap[i] -= 1;
  std::vector<int> m(L, 0), phi_m(L), l(L);
  do {
    for (int k = 0; k < L; ++k)
      phi_m[k] = m[k] + (k == i && state == MarkedState::counted_alive ? 1 : 0);
    const double phm = st.phi(phi_m);
    double outer = 1.0;
    for (int k = 0; k < L; ++k)
      outer *= binom(k == i ? n[k] - 1 : n[k], m[k]);
    std::fill(l.begin(), l.end(), 0);
    do {
      const double bracket = phm - st.phi(l);
      if (bracket == 0.0) continue;
      double w = outer * bracket;
      for (int k = 0; k < L; ++k) w *= binom(m[k], l[k]);
      terms.push_back({w, m, l});
    } while (next_odometer(l, m));
  } while (next_odometer(m, cap));

  std::vector<double> fbar_tau(L);
  for (int k = 0; k < L; ++k)
    fbar_tau[k] = model.marginals[k].reliability(tau);

  auto integrand = [&](double s) {
    std::vector<double> fbar_s(L);
    for (int k = 0; k < L; ++k) fbar_s[k] = model.marginals[k].reliability(s);
    const double dens = model.marginals[i].density(s);
    if (dens == 0.0) return 0.0;
    KahanSum sum;
    for (const auto& term : terms) {
      double p = term.weight;
      for (int k = 0; k < L; ++k) {
        const int dead_at_s = n[k] - term.m[k] - (k == i ? 1 : 0);
        p *= std::pow(1.0 - fbar_s[k], dead_at_s) *
             std::pow(fbar_s[k] - fbar_tau[k], term.m[k] - term.l[k]) *
             std::pow(fbar_tau[k], term.l[k]);
      }
      sum.add(p);
    }
    return sum.value() * dens;
  };
  quad::Options opt;
  opt.abs_tol = 1e-9;
  opt.rel_tol = 1e-8;
  const double integral = quad::integrate_interval(integrand, 0.0, tau, opt).value;
  return ni * integral / f_tau;
}

ExpectationReport expectation_report(const SystemModel& model, double tau,
                                     MarkedState state) {
  ExpectationReport report;
  report.tau = tau;
  const bool indep = model.copula.is_independence();
  for (int i = 0; i < model.types(); ++i) {
    report.failed_at_failure.push_back(
        indep ? expected_failed_at_failure_indep(model, i)
              : expected_failed_at_failure(model, i));
    if (tau > 0.0) {
      report.failures_by_tau_alive.push_back(
          indep ? expected_failures_by_tau_given_survival_indep(model, i, tau)
                : expected_failures_by_tau_given_survival(model, i, tau));
      report.failed_at_failure_early.push_back(
          indep ? expected_failed_at_failure_given_early_failure_indep(
                      model, i, tau, state)
                : expected_failed_at_failure_given_early_failure(model, i, tau,
                                                                 state));
    }
  }
  return report;
}

}  // namespace rda
