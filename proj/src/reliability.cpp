#include "redundalloc/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "detail_sum.hpp"
#include "redundalloc/errors.hpp"
#include "redundalloc/quadrature.hpp"

namespace rda {

using detail::binom;
using detail::KahanSum;
using detail::parity;

ReliabilityKernel::ReliabilityKernel(const SystemModel& model)
    : model_(&model) {
  const auto& st = model.structure;
  const auto& n = st.counts();
  const int L = st.types();
  coeff_.assign(st.lattice_size(), 0.0);
  // coeff[r] = sum_{l <= r} phi(l) prod_k C(n_k, l_k) (-1)^(r_k - l_k)
  //                         C(n_k - l_k, r_k - l_k)
  std::vector<int> l(L, 0);
  for (std::size_t il = 0; il < st.lattice_size(); ++il) {
    const double ph = st.phi_at(il);
    if (ph != 0.0) {
      double base = ph;
      for (int k = 0; k < L; ++k) base *= binom(n[k], l[k]);
      // distribute onto every r >= l
      std::vector<int> r = l;
      std::size_t ir = il;
      // iterate the sub-lattice l <= r <= n via odometer on (r - l)
      std::vector<int> off(L, 0);
      while (true) {
        double term = base;
        int sgn = 0;
        for (int k = 0; k < L; ++k) {
          term *= binom(n[k] - l[k], off[k]);
          sgn += off[k];
        }
        coeff_[ir] += parity(sgn) * term;
        int k = L - 1;
        for (; k >= 0; --k) {
          if (l[k] + off[k] < n[k]) {
            ++off[k];
            break;
          }
          off[k] = 0;
        }
        if (k < 0) break;
        // recompute flat index of l + off
        for (int q = 0; q < L; ++q) r[q] = l[q] + off[q];
        ir = st.flatten(r);
      }
    }
    for (int k = L - 1; k >= 0; --k) {
      if (++l[k] <= n[k]) break;
      l[k] = 0;
    }
  }
}

double ReliabilityKernel::survival_with_margins(std::span<const double> g) const {
  const auto& st = model_->structure;
  const auto& n = st.counts();
  const int L = st.types();
  std::vector<ArgBlock> blocks(L);
  std::vector<int> r(L, 0);
  KahanSum sum;
  for (std::size_t ir = 0; ir < st.lattice_size(); ++ir) {
    if (coeff_[ir] != 0.0) {
      for (int k = 0; k < L; ++k) blocks[k] = {g[k], r[k]};
      sum.add(coeff_[ir] * model_->copula.eval(blocks));
    }
    for (int k = L - 1; k >= 0; --k) {
      if (++r[k] <= n[k]) break;
      r[k] = 0;
    }
  }
  // Guard against inclusion-exclusion cancellation spilling outside [0, 1].
  return std::clamp(sum.value(), 0.0, 1.0);
}

double ReliabilityKernel::survival(double t) const {
  std::vector<double> g(model_->types());
  for (int k = 0; k < model_->types(); ++k)
    g[k] = model_->marginals[k].reliability(t);
  return survival_with_margins(g);
}

double ReliabilityKernel::survival_redundant(std::span<const int> v,
                                             double t) const {
  std::vector<double> g(model_->types());
  for (int k = 0; k < model_->types(); ++k) {
    const double fbar = model_->marginals[k].reliability(t);
    g[k] = 1.0 - std::pow(1.0 - fbar, (double)(v[k] + 1));
  }
  return survival_with_margins(g);
}

double system_reliability(const SystemModel& model, double t) {
  return ReliabilityKernel(model).survival(t);
}

double system_reliability_indep(const SystemModel& model, double t) {
  require(model.copula.is_independence(), errc::wrong_copula,
          "independent-case path requires the independence copula");
  const auto& st = model.structure;
  const auto& n = st.counts();
  const int L = st.types();
  std::vector<double> fbar(L), f(L);
  for (int k = 0; k < L; ++k) {
    fbar[k] = model.marginals[k].reliability(t);
    f[k] = 1.0 - fbar[k];
  }
  std::vector<int> l(L, 0);
  KahanSum sum;
  for (std::size_t il = 0; il < st.lattice_size(); ++il) {
    const double ph = st.phi_at(il);
    if (ph != 0.0) {
      double term = ph;
      for (int k = 0; k < L; ++k)
        term *= binom(n[k], l[k]) * std::pow(fbar[k], l[k]) *
                std::pow(f[k], n[k] - l[k]);
      sum.add(term);
    }
    for (int k = L - 1; k >= 0; --k) {
      if (++l[k] <= n[k]) break;
      l[k] = 0;
    }
  }
  return std::clamp(sum.value(), 0.0, 1.0);
}

double redundant_reliability(const SystemModel& model, std::span<const int> v,
                             double t) {
  validate_redundancy(model, v);
  return ReliabilityKernel(model).survival_redundant(v, t);
}

namespace {

// Smallest polynomial decay rate of the system survival tail: the slowest
// surviving term of the expansion decays like t^(-min over working states of
// sum l_k * tail_k). Infinite for exponential-type tails.
double system_tail_exponent(const SystemModel& model) {
  const auto& st = model.structure;
  const int L = st.types();
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> l(L, 0);
  for (std::size_t il = 0; il < st.lattice_size(); ++il) {
    if (st.phi_at(il) > 0.0) {
      double rate = 0.0;
      for (int k = 0; k < L; ++k)
        rate += l[k] * model.marginals[k].tail_exponent();
      best = std::min(best, rate);
    }
    for (int k = L - 1; k >= 0; --k) {
      if (++l[k] <= st.counts()[k]) break;
      l[k] = 0;
    }
  }
  return best;
}

}  // namespace

double mttf(const SystemModel& model, std::span<const int> v) {
  validate_redundancy(model, v);
  if (system_tail_exponent(model) <= 1.0)
    fail(errc::divergent_integral,
         "system reliability tail decays too slowly for a finite mean");
  ReliabilityKernel kernel(model);
  quad::Options opt;
  opt.abs_tol = 1e-10;
  opt.rel_tol = 1e-8;
  return quad::integrate_halfline(
             [&](double t) { return kernel.survival_redundant(v, t); }, opt)
      .value;
}

double expected_min_tau(const SystemModel& model, std::span<const int> v,
                        double tau) {
  validate_redundancy(model, v);
  require(tau > 0.0, errc::out_of_range, "tau must be > 0");
  ReliabilityKernel kernel(model);
  quad::Options opt;
  opt.abs_tol = 1e-10;
  opt.rel_tol = 1e-10;
  return quad::integrate_interval(
             [&](double t) { return kernel.survival_redundant(v, t); }, 0.0,
             tau, opt)
      .value;
}

}  // namespace rda
