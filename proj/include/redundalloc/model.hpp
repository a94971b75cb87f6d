#pragma once

#include <optional>
#include <span>
#include <vector>

#include "redundalloc/copula.hpp"
#include "redundalloc/marginals.hpp"
#include "redundalloc/structure.hpp"

namespace rda {

// Structure + dependence + per-type lifetime models. Immutable once built.
struct SystemModel {
  SystemStructure structure;
  SurvivalCopula copula;
  std::vector<MarginalModel> marginals;  // one per type

  SystemModel(SystemStructure s, SurvivalCopula c,
              std::vector<MarginalModel> m);

  int types() const { return structure.types(); }
};

// Replacement economics: c_i to replace a failed component of type i, c_i*
// to refresh a live one (c_i >= c_i*), a fixed system-failure charge, spare
// stocks M_i, and an optional replacement age.
struct CostModel {
  std::vector<double> c;
  std::vector<double> c_star;
  double c_fixed = 0.0;
  std::vector<int> spares;
  std::optional<double> tau;

  void validate(int types) const;
};

void validate_redundancy(const SystemModel& model, std::span<const int> v);

// v feasible iff n_i v_i <= M_i for every type.
bool redundancy_feasible(const SystemModel& model, const CostModel& costs,
                         std::span<const int> v);

}  // namespace rda
