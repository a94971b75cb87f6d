#include "redundalloc/model.hpp"

#include "redundalloc/errors.hpp"

namespace rda {

SystemModel::SystemModel(SystemStructure s, SurvivalCopula c,
                         std::vector<MarginalModel> m)
    : structure(std::move(s)), copula(std::move(c)), marginals(std::move(m)) {
  require((int)marginals.size() == structure.types(), errc::mismatched_sizes,
          "need exactly one marginal model per component type");
}

void CostModel::validate(int types) const {
  require((int)c.size() == types && (int)c_star.size() == types,
          errc::mismatched_sizes, "cost vectors must have one entry per type");
  require((int)spares.size() == types, errc::mismatched_sizes,
          "spare stock vector must have one entry per type");
  for (int i = 0; i < types; ++i) {
    require(c_star[i] >= 0.0, errc::out_of_range, "c_i* must be >= 0");
    require(c[i] >= c_star[i], errc::out_of_range, "c_i >= c_i* is required");
    require(spares[i] >= 0, errc::out_of_range, "M_i must be >= 0");
  }
  require(c_fixed >= 0.0, errc::out_of_range, "fixed failure cost must be >= 0");
  if (tau) require(*tau > 0.0, errc::out_of_range, "tau must be > 0");
}

void validate_redundancy(const SystemModel& model, std::span<const int> v) {
  require((int)v.size() == model.types(), errc::mismatched_sizes,
          "redundancy vector must have one entry per type");
  for (int vi : v)
    require(vi >= 0, errc::out_of_range, "redundancies must be >= 0");
}

bool redundancy_feasible(const SystemModel& model, const CostModel& costs,
                         std::span<const int> v) {
  for (int i = 0; i < model.types(); ++i)
    if (model.structure.counts()[i] * v[i] > costs.spares[i]) return false;
  return true;
}

}  // namespace rda
