#include "redundalloc/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "redundalloc/errors.hpp"
#include "redundalloc/quadrature.hpp"
#include "redundalloc/reliability.hpp"

namespace rda {

const char* objective_name(Objective o) {
  switch (o) {
    case Objective::cost1: return "cost1";
    case Objective::cost2: return "cost2";
    case Objective::cost3: return "cost3";
    case Objective::cost4: return "cost4";
  }
  return "?";
}

std::optional<Objective> objective_from_name(const std::string& name) {
  if (name == "cost1") return Objective::cost1;
  if (name == "cost2") return Objective::cost2;
  if (name == "cost3") return Objective::cost3;
  if (name == "cost4") return Objective::cost4;
  return std::nullopt;
}

namespace {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("REDUNDALLOC_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? (int)hw : 1;
}

// Evaluate f(i) for i in [0, count) across workers; results land in a
// position-indexed vector so the output order never depends on scheduling.
template <typename F>
std::vector<double> parallel_map(int count, int threads, F&& f) {
  std::vector<double> out(count);
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::exception_ptr error;
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  std::mutex error_mutex;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          out[i] = f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace

std::vector<std::vector<int>> enumerate_feasible(std::span<const int> n,
                                                 std::span<const int> spares) {
  require(n.size() == spares.size(), errc::mismatched_sizes,
          "n and M must agree in length");
  std::vector<int> hi(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    require(n[i] >= 1, errc::bad_parameter, "n_i must be >= 1");
    require(spares[i] >= 0, errc::bad_parameter, "M_i must be >= 0");
    hi[i] = spares[i] / n[i];
  }
  std::vector<std::vector<int>> out;
  std::vector<int> v(n.size(), 0);
  for (;;) {
    out.push_back(v);
    int k = (int)n.size() - 1;
    for (; k >= 0; --k) {
      if (++v[k] <= hi[k]) break;
      v[k] = 0;
    }
    if (k < 0) break;
  }
  return out;
}

AllocationResult optimize_allocation(const SystemModel& model,
                                     const CostModel& costs,
                                     Objective objective,
                                     std::optional<double> tau,
                                     CostAccounting accounting, int threads) {
  require(objective == Objective::cost1 || objective == Objective::cost2,
          errc::bad_parameter, "allocation objectives are cost1 and cost2");
  costs.validate(model.types());
  if (objective == Objective::cost2) {
    if (!tau) tau = costs.tau;
    require(tau.has_value(), errc::bad_parameter, "cost2 requires tau");
  }
  auto grid_v = enumerate_feasible(model.structure.counts(), costs.spares);
  require(!grid_v.empty(), errc::empty_grid, "no feasible redundancy vectors");

  // Conditional expectations are v-independent; compute them once.
  ReplacementIngredients ingredients =
      cost_ingredients(model, objective == Objective::cost2 ? *tau : 0.0,
                       accounting);
  auto values = parallel_map(
      (int)grid_v.size(), resolve_threads(threads), [&](int i) {
        try {
          return objective == Objective::cost1
                     ? cost1_with(model, costs, grid_v[i],
                                  ingredients.failed_at_death)
                     : cost2_with(model, costs, grid_v[i], *tau, ingredients);
        } catch (const Error& e) {
          throw Error(e.code(), std::string(e.what()) + " at grid point " +
                                    [&] {
                                      std::string s;
                                      for (int x : grid_v[i])
                                        s += std::to_string(x) + ",";
                                      return s;
                                    }());
        }
      });
  AllocationResult result;
  result.objective = objective;
  result.tau_used = tau;
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid_v.size(); ++i) {
    result.grid.emplace_back(grid_v[i], values[i]);
    if (values[i] < values[best]) best = i;
  }
  result.best = grid_v[best];
  result.best_value = values[best];
  return result;
}

AllocationResult optimize_subsystem_sizes(const SystemModel& model_template,
                                          const CostModel& costs,
                                          Objective objective,
                                          std::optional<double> tau,
                                          CostAccounting accounting,
                                          int threads) {
  require(objective == Objective::cost3 || objective == Objective::cost4,
          errc::bad_parameter, "size objectives are cost3 and cost4");
  costs.validate(model_template.types());
  if (objective == Objective::cost4) {
    if (!tau) tau = costs.tau;
    require(tau.has_value(), errc::bad_parameter, "cost4 requires tau");
  }
  const int L = model_template.types();
  std::vector<std::vector<int>> grid_n;
  std::vector<int> nv(L, 1);
  for (;;) {
    grid_n.push_back(nv);
    int k = L - 1;
    for (; k >= 0; --k) {
      if (++nv[k] <= costs.spares[k]) break;
      nv[k] = 1;
    }
    if (k < 0) break;
  }
  require(!grid_n.empty(), errc::empty_grid, "no feasible subsystem sizes");

  auto values = parallel_map(
      (int)grid_n.size(), resolve_threads(threads), [&](int i) {
        SystemModel m(SystemStructure::series_parallel(grid_n[i]),
                      model_template.copula, model_template.marginals);
        return objective == Objective::cost3
                   ? cost3(m, costs)
                   : cost4(m, costs, *tau, accounting);
      });
  AllocationResult result;
  result.objective = objective;
  result.tau_used = tau;
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid_n.size(); ++i) {
    result.grid.emplace_back(grid_n[i], values[i]);
    if (values[i] < values[best]) best = i;
  }
  result.best = grid_n[best];
  result.best_value = values[best];
  return result;
}

std::pair<double, double> default_tau_bracket(const SystemModel& model) {
  double max_mean = 0.0;
  for (const auto& m : model.marginals) {
    double mean = m.mean();
    if (std::isfinite(mean)) max_mean = std::max(max_mean, mean);
  }
  if (max_mean <= 0.0) max_mean = 1.0;
  return {1e-3, 5.0 * max_mean};
}

TauResult optimize_tau(const SystemModel& model, const CostModel& costs,
                       std::span<const int> v, Objective objective,
                       double tau_lo, double tau_hi,
                       CostAccounting accounting) {
  require(objective == Objective::cost2 || objective == Objective::cost4,
          errc::bad_parameter, "tau optimization applies to cost2 and cost4");
  require(tau_lo > 0.0 && tau_lo < tau_hi, errc::bad_parameter,
          "need 0 < tau_lo < tau_hi");
  auto objective_at = [&](double tau) {
    return objective == Objective::cost2
               ? cost2(model, costs, v, tau, accounting)
               : cost4(model, costs, tau, accounting);
  };
  auto res = quad::minimize_scalar(objective_at, tau_lo, tau_hi, 1e-3);
  TauResult out;
  out.tau_star = res.x;
  out.value = res.value;
  out.bracket_lo = tau_lo;
  out.bracket_hi = tau_hi;
  out.on_boundary = res.on_boundary;
  return out;
}

}  // namespace rda
