#pragma once

#include <span>
#include <vector>

#include "redundalloc/expectations.hpp"
#include "redundalloc/model.hpp"

namespace rda {

// Conditional-expectation conventions used when assembling the
// age-replacement objectives. `consistent` uses the self-consistent
// conditional expectations (the ones the simulation oracle reproduces);
// `reference` applies the conventions under which the published reference
// tables for this method were generated, so those tables reproduce digit for
// digit. The failure-time objectives (cost1/cost3) are identical under both.
enum class CostAccounting { consistent, reference };

// Mean cost rate at system failure with v_i active spares per type-i
// component (renewal-reward: expected renewal cost over the mean lifetime).
double cost1(const SystemModel& model, const CostModel& costs,
             std::span<const int> v);

// Age-replacement mean cost rate: renew at min(tau, T_R).
double cost2(const SystemModel& model, const CostModel& costs,
             std::span<const int> v, double tau,
             CostAccounting accounting = CostAccounting::consistent);

// Series-parallel subsystem-sizing variants: the structure's own subsystem
// sizes n_i are the decision variables, so no redundancy scaling appears.
double cost3(const SystemModel& model, const CostModel& costs);

double cost4(const SystemModel& model, const CostModel& costs, double tau,
             CostAccounting accounting = CostAccounting::consistent);

// Precomputed per-(model, tau) replacement ingredients shared across a
// v-grid sweep: the conditionals do not depend on v.
struct ReplacementIngredients {
  std::vector<double> failed_at_death;  // E(X_i(T)) (cost1 numerator)
  std::vector<double> early_failures;   // E(X_i(T)|T<=tau)
  std::vector<double> alive_failures;   // per-type E(N_i(tau)|T>tau)
  double tau = 0.0;
};

ReplacementIngredients cost_ingredients(const SystemModel& model, double tau,
                                        CostAccounting accounting);

double cost1_with(const SystemModel& model, const CostModel& costs,
                  std::span<const int> v,
                  std::span<const double> failed_at_death);

double cost2_with(const SystemModel& model, const CostModel& costs,
                  std::span<const int> v, double tau,
                  const ReplacementIngredients& ingredients);

}  // namespace rda
