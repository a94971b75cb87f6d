#include "redundalloc/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>

#include "redundalloc/errors.hpp"

namespace rda {

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

// Per-run state of one simulated renewal cycle.
struct RunState {
  double death = 0.0;                 // original system lifetime T
  double death_redundant = 0.0;       // T_R (equals T when v = 0)
  std::vector<int> failed_at_death;   // X_i(T), per type
  std::vector<double> lifetimes;      // slot-major component lifetimes
};

struct Walker {
  const SystemModel* model;
  std::vector<int> slot_type;   // type of each slot
  std::vector<int> order;       // scratch
  std::vector<int> counts;      // scratch

  explicit Walker(const SystemModel& m) : model(&m) {
    const auto& n = m.structure.counts();
    for (int i = 0; i < m.types(); ++i)
      slot_type.insert(slot_type.end(), n[i], i);
  }

  // Death epoch of the failure path `times` under the mixture uniform w;
  // fills failed (per type, counted at the death epoch inclusive) if given.
  double death_time(std::span<const double> times, double w,
                    std::vector<int>* failed) {
    const int total = (int)times.size();
    order.resize(total);
    for (int s = 0; s < total; ++s) order[s] = s;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return times[a] < times[b]; });
    counts.assign(model->types(), 0);
    const auto& n = model->structure.counts();
    for (int i = 0; i < model->types(); ++i) counts[i] = n[i];
    for (int k = 0; k < total; ++k) {
      const int slot = order[k];
      --counts[slot_type[slot]];
      if (model->structure.phi(counts) < w) {
        if (failed) {
          *failed = n;
          for (int i = 0; i < model->types(); ++i)
            (*failed)[i] = n[i] - counts[i];
        }
        return times[slot];
      }
    }
    // phi(0,...,0) = 0 < w almost surely; reaching here means w == 0.
    if (failed) failed->assign(model->types(), 0);
    return times[order.back()];
  }
};

void draw_run(const SystemModel& model, std::span<const int> v, Rng& rng,
              Walker& walker, RunState& run) {
  const int total = model.structure.total_components();
  static thread_local std::vector<double> u, bundle_times;
  u.resize(total);
  model.copula.sample(total, rng, u);
  const double w = rng.uniform_open();
  run.lifetimes.resize(total);
  bool any_redundancy = false;
  for (int x : v) any_redundancy |= x > 0;
  int slot = 0;
  for (int i = 0; i < model.types(); ++i)
    for (int j = 0; j < model.structure.counts()[i]; ++j, ++slot)
      run.lifetimes[slot] = model.marginals[i].quantile(u[slot]);
  run.death = walker.death_time(run.lifetimes, w, &run.failed_at_death);
  if (!any_redundancy) {
    run.death_redundant = run.death;
    return;
  }
  // Subsystem (bundle) lifetimes: same copula uniforms pushed through the
  // parallel-of-(v_i+1) margin, so F_bar_bundle = 1 - F_i^(v_i+1).
  bundle_times.resize(total);
  slot = 0;
  for (int i = 0; i < model.types(); ++i)
    for (int j = 0; j < model.structure.counts()[i]; ++j, ++slot) {
      const double transformed =
          1.0 - std::pow(1.0 - u[slot], 1.0 / (double)(v[i] + 1));
      bundle_times[slot] = model.marginals[i].quantile(
          std::min(1.0, std::max(1e-300, transformed)));
    }
  run.death_redundant = walker.death_time(bundle_times, w, nullptr);
}

// Accumulate per-run statistics into sums across workers with a fixed
// reduction order; f fills `stats` from the run.
std::vector<double> accumulate_runs(
    const SystemModel& model, std::span<const int> v,
    const SimulationConfig& config, int stat_count,
    const std::function<void(const RunState&, std::span<double>)>& f) {
  const int threads = resolve_threads(config.threads);
  const long per_worker = (config.samples + threads - 1) / threads;
  std::vector<std::vector<double>> partial(
      threads, std::vector<double>(stat_count, 0.0));
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int wkr = 0; wkr < threads; ++wkr)
    pool.emplace_back([&, wkr] {
      try {
        Rng rng = Rng::substream(config.seed, (std::uint64_t)wkr);
        Walker walker(model);
        RunState run;
        std::vector<double> stats(stat_count);
        const long lo = wkr * per_worker;
        const long hi = std::min<long>(config.samples, lo + per_worker);
        for (long it = lo; it < hi; ++it) {
          draw_run(model, v, rng, walker, run);
          std::fill(stats.begin(), stats.end(), 0.0);
          f(run, stats);
          for (int s = 0; s < stat_count; ++s) partial[wkr][s] += stats[s];
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  std::vector<double> sums(stat_count, 0.0);
  for (int wkr = 0; wkr < threads; ++wkr)
    for (int s = 0; s < stat_count; ++s) sums[s] += partial[wkr][s];
  return sums;
}

// mean and stderr of a plain sample mean from (sum, sum of squares).
SimulationEstimate mean_estimate(double sum, double sumsq, long n) {
  const double mean = sum / n;
  const double var = std::max(0.0, sumsq / n - mean * mean);
  return {mean, std::sqrt(var / n), n};
}

// Delta-method stderr for a ratio of means A/B computed from the same runs.
SimulationEstimate ratio_estimate(double sa, double saa, double sb, double sbb,
                                  double sab, long n) {
  const double ma = sa / n, mb = sb / n;
  const double r = ma / mb;
  const double va = saa / n - ma * ma;
  const double vb = sbb / n - mb * mb;
  const double cab = sab / n - ma * mb;
  const double var = (va - 2.0 * r * cab + r * r * vb) / (mb * mb);
  return {r, std::sqrt(std::max(0.0, var) / n), n};
}

std::vector<int> zeros(const SystemModel& model) {
  return std::vector<int>(model.types(), 0);
}

}  // namespace

std::vector<double> sample_component_lifetimes(const SystemModel& model,
                                               Rng& rng) {
  const int total = model.structure.total_components();
  std::vector<double> u(total), out(total);
  model.copula.sample(total, rng, u);
  int slot = 0;
  for (int i = 0; i < model.types(); ++i)
    for (int j = 0; j < model.structure.counts()[i]; ++j, ++slot)
      out[slot] = model.marginals[i].quantile(u[slot]);
  return out;
}

double simulate_system_lifetime(const SystemModel& model,
                                std::span<const int> v, Rng& rng) {
  validate_redundancy(model, v);
  Walker walker(model);
  RunState run;
  draw_run(model, v, rng, walker, run);
  return run.death_redundant;
}

SimulationEstimate simulate_reliability(const SystemModel& model,
                                        std::span<const int> v, double t,
                                        const SimulationConfig& config) {
  validate_redundancy(model, v);
  auto sums = accumulate_runs(model, v, config, 2,
                              [&](const RunState& run, std::span<double> s) {
                                const double up = run.death_redundant > t;
                                s[0] = up;
                                s[1] = up * up;
                              });
  return mean_estimate(sums[0], sums[1], config.samples);
}

SimulationEstimate simulate_mttf(const SystemModel& model,
                                 std::span<const int> v,
                                 const SimulationConfig& config) {
  validate_redundancy(model, v);
  auto sums = accumulate_runs(model, v, config, 2,
                              [&](const RunState& run, std::span<double> s) {
                                s[0] = run.death_redundant;
                                s[1] = run.death_redundant * run.death_redundant;
                              });
  return mean_estimate(sums[0], sums[1], config.samples);
}

SimulationEstimate simulate_expected_failed(const SystemModel& model, int i,
                                            const SimulationConfig& config) {
  require(i >= 0 && i < model.types(), errc::bad_index, "type out of range");
  auto v = zeros(model);
  auto sums = accumulate_runs(model, v, config, 2,
                              [&](const RunState& run, std::span<double> s) {
                                const double x = run.failed_at_death[i];
                                s[0] = x;
                                s[1] = x * x;
                              });
  return mean_estimate(sums[0], sums[1], config.samples);
}

SimulationEstimate simulate_failures_by_tau(const SystemModel& model, int i,
                                            double tau,
                                            const SimulationConfig& config) {
  require(i >= 0 && i < model.types(), errc::bad_index, "type out of range");
  auto v = zeros(model);
  const auto& n = model.structure.counts();
  int lo = 0;
  for (int k = 0; k < i; ++k) lo += n[k];
  const int hi = lo + n[i];
  // ratio E[N_i 1{T>tau}] / P(T>tau)
  auto sums = accumulate_runs(
      model, v, config, 5, [&](const RunState& run, std::span<double> s) {
        const double alive = run.death > tau;
        double count = 0;
        for (int slot = lo; slot < hi; ++slot)
          count += run.lifetimes[slot] <= tau;
        const double a = alive * count;
        s[0] = a;
        s[1] = a * a;
        s[2] = alive;
        s[3] = alive;
        s[4] = a;  // cross term a * alive == a
      });
  return ratio_estimate(sums[0], sums[1], sums[2], sums[3], sums[4],
                        config.samples);
}

SimulationEstimate simulate_failed_early(const SystemModel& model, int i,
                                         double tau,
                                         const SimulationConfig& config) {
  require(i >= 0 && i < model.types(), errc::bad_index, "type out of range");
  auto v = zeros(model);
  auto sums = accumulate_runs(
      model, v, config, 5, [&](const RunState& run, std::span<double> s) {
        const double dead = run.death <= tau;
        const double a = dead * run.failed_at_death[i];
        s[0] = a;
        s[1] = a * a;
        s[2] = dead;
        s[3] = dead;
        s[4] = a;
      });
  return ratio_estimate(sums[0], sums[1], sums[2], sums[3], sums[4],
                        config.samples);
}

SimulationEstimate simulate_cost1(const SystemModel& model,
                                  const CostModel& costs,
                                  std::span<const int> v,
                                  const SimulationConfig& config) {
  validate_redundancy(model, v);
  costs.validate(model.types());
  const auto& n = model.structure.counts();
  double fixed = costs.c_fixed;
  for (int i = 0; i < model.types(); ++i)
    fixed += costs.c_star[i] * (v[i] + 1) * n[i];
  auto sums = accumulate_runs(
      model, v, config, 5, [&](const RunState& run, std::span<double> s) {
        double num = fixed;
        for (int i = 0; i < model.types(); ++i)
          num += (costs.c[i] - costs.c_star[i]) * (v[i] + 1) *
                 run.failed_at_death[i];
        const double den = run.death_redundant;
        s[0] = num;
        s[1] = num * num;
        s[2] = den;
        s[3] = den * den;
        s[4] = num * den;
      });
  return ratio_estimate(sums[0], sums[1], sums[2], sums[3], sums[4],
                        config.samples);
}

SimulationEstimate simulate_cost2(const SystemModel& model,
                                  const CostModel& costs,
                                  std::span<const int> v, double tau,
                                  const SimulationConfig& config) {
  validate_redundancy(model, v);
  costs.validate(model.types());
  require(tau > 0.0, errc::out_of_range, "tau must be > 0");
  const auto& n = model.structure.counts();
  std::vector<int> lo(model.types(), 0);
  for (int i = 1; i < model.types(); ++i) lo[i] = lo[i - 1] + n[i - 1];
  double fixed_refresh = 0.0;
  for (int i = 0; i < model.types(); ++i)
    fixed_refresh += costs.c_star[i] * (v[i] + 1) * n[i];
  auto sums = accumulate_runs(
      model, v, config, 5, [&](const RunState& run, std::span<double> s) {
        double num = fixed_refresh;
        if (run.death_redundant <= tau) {
          num += costs.c_fixed;
          for (int i = 0; i < model.types(); ++i)
            num += (costs.c[i] - costs.c_star[i]) * (v[i] + 1) *
                   run.failed_at_death[i];
        } else {
          for (int i = 0; i < model.types(); ++i) {
            double count = 0;
            for (int slot = lo[i]; slot < lo[i] + n[i]; ++slot)
              count += run.lifetimes[slot] <= tau;
            num += (costs.c[i] - costs.c_star[i]) * (v[i] + 1) * count;
          }
        }
        const double den = std::min(tau, run.death_redundant);
        s[0] = num;
        s[1] = num * num;
        s[2] = den;
        s[3] = den * den;
        s[4] = num * den;
      });
  return ratio_estimate(sums[0], sums[1], sums[2], sums[3], sums[4],
                        config.samples);
}

}  // namespace rda
