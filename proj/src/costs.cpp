#include "redundalloc/costs.hpp"

#include <cmath>

#include "redundalloc/errors.hpp"
#include "redundalloc/reliability.hpp"

namespace rda {

namespace {

void check_feasible_redundancy(const SystemModel& model, const CostModel& costs,
                               std::span<const int> v) {
  validate_redundancy(model, v);
  costs.validate(model.types());
  require(redundancy_feasible(model, costs, v), errc::infeasible,
          "redundancy vector violates the spare stocks (n_i v_i <= M_i)");
}

void check_feasible_sizes(const SystemModel& model, const CostModel& costs) {
  costs.validate(model.types());
  require(model.structure.is_series_parallel(), errc::bad_parameter,
          "subsystem-sizing objectives need a series-parallel structure");
  for (int i = 0; i < model.types(); ++i)
    require(model.structure.counts()[i] <= costs.spares[i], errc::infeasible,
            "subsystem size exceeds the available stock (n_i <= M_i)");
}

double early_failure_term(const SystemModel& model, int i, double tau,
                          CostAccounting accounting) {
  const bool indep = model.copula.is_independence();
  if (accounting == CostAccounting::reference) {
    // The reference tables special-case single-component subsystems as
    // F_i(tau) / (1 - Fbar_T(tau)) and count the marked component as already
    // removed from the running state elsewhere.
    if (model.structure.is_series_parallel() &&
        model.structure.counts()[i] == 1) {
      const double fbar_tau = ReliabilityKernel(model).survival(tau);
      require(1.0 - fbar_tau > 1e-12, errc::zero_failure_probability,
              "system failure by tau has numerically zero probability");
      return (1.0 - model.marginals[i].reliability(tau)) / (1.0 - fbar_tau);
    }
    return indep ? expected_failed_at_failure_given_early_failure_indep(
                       model, i, tau, MarkedState::counted_failed)
                 : expected_failed_at_failure_given_early_failure(
                       model, i, tau, MarkedState::counted_failed);
  }
  return indep ? expected_failed_at_failure_given_early_failure_indep(
                     model, i, tau, MarkedState::counted_alive)
               : expected_failed_at_failure_given_early_failure(
                     model, i, tau, MarkedState::counted_alive);
}

double alive_failure_term(const SystemModel& model, int i, double tau,
                          CostAccounting accounting) {
  // Reference tables applied the type-1 conditional count to every type in
  // the redundancy objective.
  const int idx = accounting == CostAccounting::reference ? 0 : i;
  return model.copula.is_independence()
             ? expected_failures_by_tau_given_survival_indep(model, idx, tau)
             : expected_failures_by_tau_given_survival(model, idx, tau);
}

}  // namespace

ReplacementIngredients cost_ingredients(const SystemModel& model, double tau,
                                        CostAccounting accounting) {
  ReplacementIngredients out;
  out.tau = tau;
  const bool indep = model.copula.is_independence();
  // Degenerate ages: a conditional whose mixture weight vanishes at this tau
  // contributes nothing, so it is pinned to zero instead of raising.
  bool survival_degenerate = false;
  bool failure_degenerate = false;
  if (tau > 0.0) {
    const double fbar_tau = ReliabilityKernel(model).survival(tau);
    survival_degenerate = fbar_tau <= 1e-12;
    failure_degenerate = 1.0 - fbar_tau <= 1e-12;
  }
  for (int i = 0; i < model.types(); ++i) {
    out.failed_at_death.push_back(
        indep ? expected_failed_at_failure_indep(model, i)
              : expected_failed_at_failure(model, i));
    if (tau > 0.0) {
      out.early_failures.push_back(
          failure_degenerate ? 0.0
                             : early_failure_term(model, i, tau, accounting));
      out.alive_failures.push_back(
          survival_degenerate ? 0.0
                              : alive_failure_term(model, i, tau, accounting));
    }
  }
  return out;
}

double cost1_with(const SystemModel& model, const CostModel& costs,
                  std::span<const int> v,
                  std::span<const double> failed_at_death) {
  check_feasible_redundancy(model, costs, v);
  const auto& n = model.structure.counts();
  double num = costs.c_fixed;
  for (int i = 0; i < model.types(); ++i)
    num += (costs.c[i] - costs.c_star[i]) * (v[i] + 1) * failed_at_death[i] +
           costs.c_star[i] * (v[i] + 1) * n[i];
  const double denom = mttf(model, v);
  require(std::isfinite(denom) && denom > 0.0, errc::degenerate_denominator,
          "mean time to failure is zero or non-finite");
  return num / denom;
}

double cost1(const SystemModel& model, const CostModel& costs,
             std::span<const int> v) {
  const bool indep = model.copula.is_independence();
  std::vector<double> ex;
  for (int i = 0; i < model.types(); ++i)
    ex.push_back(indep ? expected_failed_at_failure_indep(model, i)
                       : expected_failed_at_failure(model, i));
  return cost1_with(model, costs, v, ex);
}

double cost2_with(const SystemModel& model, const CostModel& costs,
                  std::span<const int> v, double tau,
                  const ReplacementIngredients& ingredients) {
  check_feasible_redundancy(model, costs, v);
  require(tau > 0.0, errc::out_of_range, "tau must be > 0");
  const auto& n = model.structure.counts();
  double m1 = costs.c_fixed;
  double m2 = 0.0;
  for (int i = 0; i < model.types(); ++i) {
    const double dc = costs.c[i] - costs.c_star[i];
    const double refresh = costs.c_star[i] * (v[i] + 1) * n[i];
    m1 += dc * (v[i] + 1) * ingredients.early_failures[i] + refresh;
    m2 += dc * (v[i] + 1) * ingredients.alive_failures[i] + refresh;
  }
  const double surv = redundant_reliability(model, v, tau);
  const double denom = expected_min_tau(model, v, tau);
  require(std::isfinite(denom) && denom > 0.0, errc::degenerate_denominator,
          "expected replacement cycle length is zero or non-finite");
  return (m1 * (1.0 - surv) + m2 * surv) / denom;
}

double cost2(const SystemModel& model, const CostModel& costs,
             std::span<const int> v, double tau, CostAccounting accounting) {
  return cost2_with(model, costs, v, tau,
                    cost_ingredients(model, tau, accounting));
}

double cost3(const SystemModel& model, const CostModel& costs) {
  check_feasible_sizes(model, costs);
  const auto& n = model.structure.counts();
  const bool indep = model.copula.is_independence();
  double num = costs.c_fixed;
  for (int i = 0; i < model.types(); ++i) {
    const double ex = indep ? expected_failed_at_failure_indep(model, i)
                            : expected_failed_at_failure(model, i);
    num += costs.c[i] * ex + costs.c_star[i] * (n[i] - ex);
  }
  std::vector<int> zero(model.types(), 0);
  const double denom = mttf(model, zero);
  require(std::isfinite(denom) && denom > 0.0, errc::degenerate_denominator,
          "mean time to failure is zero or non-finite");
  return num / denom;
}

double cost4(const SystemModel& model, const CostModel& costs, double tau,
             CostAccounting accounting) {
  check_feasible_sizes(model, costs);
  require(tau > 0.0, errc::out_of_range, "tau must be > 0");
  const auto& n = model.structure.counts();
  const double surv = ReliabilityKernel(model).survival(tau);
  double m1 = costs.c_fixed;
  double m2 = 0.0;
  for (int i = 0; i < model.types(); ++i) {
    const double ex = 1.0 - surv <= 1e-12
                          ? 0.0
                          : early_failure_term(model, i, tau, accounting);
    const double en =
        surv <= 1e-12
            ? 0.0
            : (model.copula.is_independence()
                   ? expected_failures_by_tau_given_survival_indep(model, i,
                                                                   tau)
                   : expected_failures_by_tau_given_survival(model, i, tau));
    m1 += costs.c[i] * ex + costs.c_star[i] * (n[i] - ex);
    m2 += costs.c[i] * en + costs.c_star[i] * (n[i] - en);
  }
  std::vector<int> zero(model.types(), 0);
  const double denom = expected_min_tau(model, zero, tau);
  require(std::isfinite(denom) && denom > 0.0, errc::degenerate_denominator,
          "expected replacement cycle length is zero or non-finite");
  return (m1 * (1.0 - surv) + m2 * surv) / denom;
}

}  // namespace rda
