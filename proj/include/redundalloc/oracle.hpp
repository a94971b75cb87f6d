#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "redundalloc/model.hpp"
#include "redundalloc/rng.hpp"

namespace rda {

struct SimulationConfig {
  long samples = 1000000;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: REDUNDALLOC_THREADS or hardware
};

struct SimulationEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long samples = 0;
};

// One draw of all component lifetimes of the original system, slot-major by
// type; the joint survival law matches the model's copula and marginals.
std::vector<double> sample_component_lifetimes(const SystemModel& model,
                                               Rng& rng);

// One system lifetime under redundancy v. Each original component together
// with its v_i spares forms a parallel subsystem whose survival margin is
// 1 - F_i(t)^(v_i+1); subsystem lifetimes keep the model's copula. With a
// fractional signature the death epoch is resolved by the standard mixture
// construction: one uniform per run, death at the first failure epoch where
// phi(working counts) drops below it.
double simulate_system_lifetime(const SystemModel& model,
                                std::span<const int> v, Rng& rng);

SimulationEstimate simulate_reliability(const SystemModel& model,
                                        std::span<const int> v, double t,
                                        const SimulationConfig& config);

SimulationEstimate simulate_mttf(const SystemModel& model,
                                 std::span<const int> v,
                                 const SimulationConfig& config);

// E(X_i(T)) of the original system.
SimulationEstimate simulate_expected_failed(const SystemModel& model, int i,
                                            const SimulationConfig& config);

// E(N_i(tau) | T > tau) of the original system.
SimulationEstimate simulate_failures_by_tau(const SystemModel& model, int i,
                                            double tau,
                                            const SimulationConfig& config);

// E(X_i(T) | T <= tau) of the original system.
SimulationEstimate simulate_failed_early(const SystemModel& model, int i,
                                         double tau,
                                         const SimulationConfig& config);

// Renewal-reward estimates of the two cost objectives (ratio of means with
// delta-method standard errors). Costs are charged with the per-type
// replacement/refresh accounting; with v = 0 these are the plain physical
// renewal costs of the simulated system.
SimulationEstimate simulate_cost1(const SystemModel& model,
                                  const CostModel& costs,
                                  std::span<const int> v,
                                  const SimulationConfig& config);

SimulationEstimate simulate_cost2(const SystemModel& model,
                                  const CostModel& costs,
                                  std::span<const int> v, double tau,
                                  const SimulationConfig& config);

}  // namespace rda
