#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "redundalloc/costs.hpp"
#include "redundalloc/model.hpp"

namespace rda {

enum class Objective { cost1, cost2, cost3, cost4 };

const char* objective_name(Objective o);
std::optional<Objective> objective_from_name(const std::string& name);

struct AllocationResult {
  std::vector<int> best;
  double best_value = 0.0;
  std::vector<std::pair<std::vector<int>, double>> grid;  // lexicographic
  Objective objective = Objective::cost1;
  std::optional<double> tau_used;
};

struct TauResult {
  double tau_star = 0.0;
  double value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  bool on_boundary = false;
};

// All v with 0 <= v_i <= floor(M_i / n_i), lexicographic.
std::vector<std::vector<int>> enumerate_feasible(std::span<const int> n,
                                                 std::span<const int> spares);

// Exhaustive sweep of cost1/cost2 over the feasible redundancy grid.
// Ties break to the lexicographically smallest vector.
AllocationResult optimize_allocation(
    const SystemModel& model, const CostModel& costs, Objective objective,
    std::optional<double> tau = std::nullopt,
    CostAccounting accounting = CostAccounting::consistent, int threads = 0);

// Exhaustive sweep of cost3/cost4 over subsystem sizes 1 <= n_i <= M_i for a
// series-parallel family sharing the template's copula and marginals.
AllocationResult optimize_subsystem_sizes(
    const SystemModel& model_template, const CostModel& costs,
    Objective objective, std::optional<double> tau = std::nullopt,
    CostAccounting accounting = CostAccounting::consistent, int threads = 0);

// Golden-section minimization of cost2 (or cost4) in tau at fixed v.
TauResult optimize_tau(const SystemModel& model, const CostModel& costs,
                       std::span<const int> v, Objective objective,
                       double tau_lo, double tau_hi,
                       CostAccounting accounting = CostAccounting::consistent);

// Default bracket (1e-3, 5 * max marginal mean) used when none is given.
std::pair<double, double> default_tau_bracket(const SystemModel& model);

}  // namespace rda
