#pragma once

#include <span>
#include <vector>

#include "redundalloc/model.hpp"

namespace rda {

// State convention for the component whose failure epoch is marked inside
// the early-failure expansions: `counted_alive` evaluates the signature with
// that component still among the living at its failure epoch (the
// self-consistent choice, which the simulation oracle agrees with);
// `counted_failed` evaluates it with the component already removed, which is
// the convention the reference tables were generated with.
enum class MarkedState { counted_alive, counted_failed };

// E(X_i(T)): expected number of failed type-i components at the instant the
// (non-redundant) system fails. General dependent-case path.
double expected_failed_at_failure(const SystemModel& model, int i);

// Independent-components specialization of the same quantity.
double expected_failed_at_failure_indep(const SystemModel& model, int i);

// E(N_i(tau) | T > tau): expected type-i failures by age tau given the
// system is still up at tau. Closed in copula evaluations.
double expected_failures_by_tau_given_survival(const SystemModel& model,
                                               int i, double tau);

double expected_failures_by_tau_given_survival_indep(const SystemModel& model,
                                                     int i, double tau);

// E(X_i(T) | T <= tau): expected type-i failures at system death given death
// happened by age tau.
double expected_failed_at_failure_given_early_failure(
    const SystemModel& model, int i, double tau,
    MarkedState state = MarkedState::counted_alive);

double expected_failed_at_failure_given_early_failure_indep(
    const SystemModel& model, int i, double tau,
    MarkedState state = MarkedState::counted_alive);

struct ExpectationReport {
  std::vector<double> failed_at_failure;              // E(X_i(T))
  std::vector<double> failures_by_tau_alive;          // E(N_i(tau)|T>tau)
  std::vector<double> failed_at_failure_early;        // E(X_i(T)|T<=tau)
  double tau = 0.0;
};

ExpectationReport expectation_report(const SystemModel& model, double tau,
                                     MarkedState state = MarkedState::counted_alive);

}  // namespace rda
