#pragma once

#include <span>
#include <vector>

#include "redundalloc/model.hpp"

namespace rda {

// Survival-signature reliability evaluator. Construction collapses the
// double inclusion-exclusion sum over (l, i) into one coefficient per
// repeat-count vector r (r_k = number of type-k survival arguments handed to
// the copula), so a single time evaluation costs one copula call per lattice
// point instead of one per (l, i) pair.
class ReliabilityKernel {
 public:
  explicit ReliabilityKernel(const SystemModel& model);

  // Joint survival of the system when the type-k component survival
  // probability at the evaluation point is g[k].
  double survival_with_margins(std::span<const double> g) const;

  double survival(double t) const;
  double survival_redundant(std::span<const int> v, double t) const;

  const SystemModel& model() const { return *model_; }

 private:
  const SystemModel* model_;
  std::vector<double> coeff_;  // indexed like the signature lattice
};

// F_bar_T(t) for the original system (works for every copula family).
double system_reliability(const SystemModel& model, double t);

// Independent-components specialization; requires the independence copula.
double system_reliability_indep(const SystemModel& model, double t);

// F_bar_{T_R}(t): each type-i survival argument becomes 1 - F_i(t)^(v_i+1).
double redundant_reliability(const SystemModel& model, std::span<const int> v,
                             double t);

// E(T_R) over the half-line. Throws DivergentIntegral when a polynomial
// marginal tail makes the system mean infinite.
double mttf(const SystemModel& model, std::span<const int> v);

// E(min(tau, T_R)) = integral of the redundant reliability over [0, tau].
double expected_min_tau(const SystemModel& model, std::span<const int> v,
                        double tau);

}  // namespace rda
