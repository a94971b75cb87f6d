#pragma once

#include <vector>

#include "redundalloc/model.hpp"

namespace testutil {

// Two-type bridge system of six components (three per type) with the
// fractional signature used throughout the worked examples.
inline rda::SystemStructure bridge_structure() {
  std::vector<int> n{3, 3};
  std::vector<std::pair<std::vector<int>, double>> e;
  for (int l1 = 0; l1 <= 3; ++l1)
    for (int l2 = 0; l2 <= 3; ++l2) {
      double v = 0;
      if (l1 == 1 && l2 == 2) v = 1.0 / 9;
      else if (l1 == 1 && l2 == 3) v = 1.0 / 3;
      else if (l1 == 2 && l2 == 2) v = 4.0 / 9;
      else if (l1 == 2 && l2 == 3) v = 2.0 / 3;
      else if (l1 == 3) v = 1.0;
      e.push_back({{l1, l2}, v});
    }
  return rda::SystemStructure::from_table(n, e);
}

inline rda::SystemModel bridge_model(double gumbel_alpha) {
  return rda::SystemModel(
      bridge_structure(),
      gumbel_alpha == 1.0 ? rda::SurvivalCopula::independence()
                          : rda::SurvivalCopula::gumbel(gumbel_alpha),
      {rda::MarginalModel::exponential(0.2),
       rda::MarginalModel::exponential(0.3)});
}

inline rda::CostModel bridge_costs() {
  return rda::CostModel{{3, 2}, {1.5, 1}, 10, {9, 6}, 2.0};
}

// Three-subsystem series-parallel model with the multivariate-Pareto joint
// law (clayton copula over linear-pareto margins, common exponent).
inline rda::SystemModel pareto_sp_model(std::vector<int> n) {
  return rda::SystemModel(rda::SystemStructure::series_parallel(n),
                          rda::SurvivalCopula::clayton(2.0),
                          {rda::MarginalModel::pareto_linear(0.4, 2),
                           rda::MarginalModel::pareto_linear(0.2, 2),
                           rda::MarginalModel::pareto_linear(0.3, 2)});
}

inline rda::CostModel pareto_sp_costs() {
  return rda::CostModel{{1.5, 2, 3}, {0.3, 0.75, 1}, 8, {2, 3, 3}, 1.0};
}

}  // namespace testutil
