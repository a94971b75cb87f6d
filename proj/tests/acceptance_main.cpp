// Acceptance suite: exercises every gate criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code is the number of
// failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "redundalloc/costs.hpp"
#include "redundalloc/expectations.hpp"
#include "redundalloc/optimizer.hpp"
#include "redundalloc/oracle.hpp"
#include "redundalloc/reliability.hpp"
#include "redundalloc/runspec.hpp"

using namespace rda;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass,
            const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion,
              name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

bool close_rel(double got, double expect, double tol) {
  return std::fabs(got - expect) <= tol * std::fabs(expect);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// ---- reference tables -----------------------------------------------

struct Table2Row {
  int v1, v2;
  double c1_dep, c2_dep, c1_ind, c2_ind;
};
const Table2Row kTable2[12] = {
    {0, 0, 6.33927, 8.2455, 9.36071, 9.70214},
    {0, 1, 6.81922, 9.44774, 9.38725, 10.3790},
    {0, 2, 7.5289, 11.3022, 9.87544, 11.9363},
    {1, 0, 5.20719, 7.77258, 7.09069, 8.48716},
    {1, 1, 5.82298, 9.2981, 7.51217, 9.7885},
    {1, 2, 6.35331, 10.7302, 7.98448, 11.3693},
    {2, 0, 4.99041, 9.13115, 6.56325, 9.88167},
    {2, 1, 5.58924, 10.7299, 7.06002, 11.4307},
    {2, 2, 6.13251, 12.28921, 7.53562, 13.0756},
    {3, 0, 5.04518, 11.137, 6.48197, 12.035},
    {3, 1, 5.59315, 12.7178, 6.98476, 13.6766},
    {3, 2, 6.11375, 14.2941, 7.45447, 15.3508}};

struct Table7Row {
  int v1, v2, v3;
  double c1, tau, c2;
};
const Table7Row kTable7[18] = {
    {0, 0, 0, 39.0424, 0.300, 29.5929}, {0, 1, 0, 37.4142, 0.375, 28.9959},
    {1, 0, 0, 42.1779, 0.365, 34.7858}, {1, 1, 0, 39.0422, 0.450, 31.1106},
    {2, 0, 0, 47.4998, 0.405, 42.0378}, {2, 1, 0, 43.0531, 0.490, 36.3495},
    {0, 0, 1, 42.2553, 0.326, 38.2377}, {0, 1, 1, 41.2034, 0.367, 37.6403},
    {1, 0, 1, 44.1149, 0.391, 41.3141}, {1, 1, 1, 41.9973, 0.463, 37.8883},
    {2, 0, 1, 48.5362, 0.445, 47.7900}, {2, 1, 1, 45.5179, 0.503, 42.4445},
    {0, 0, 2, 45.5246, 0.350, 46.7613}, {0, 1, 2, 44.8865, 0.410, 46.1258},
    {1, 0, 2, 46.1353, 0.412, 47.6364}, {1, 1, 2, 44.8022, 0.480, 44.4306},
    {2, 0, 2, 49.7090, 0.455, 53.1287}, {2, 1, 2, 47.7961, 0.520, 48.2148}};

struct Table8Row {
  int n1, n2, n3;
  double c3, c4;
};
const Table8Row kTable8[18] = {
    {1, 1, 1, 10.3750, 18.2784}, {1, 1, 2, 9.6460, 18.6515},
    {1, 1, 3, 10.0967, 21.2331}, {1, 2, 1, 9.7277, 18.1732},
    {1, 2, 2, 8.8857, 18.1463},  {1, 2, 3, 9.1886, 20.4388},
    {1, 3, 1, 10.0842, 19.8532}, {1, 3, 2, 9.0989, 19.5615},
    {1, 3, 3, 9.3157, 21.7702},  {2, 1, 1, 8.7073, 16.2100},
    {2, 1, 2, 7.9885, 16.1742},  {2, 1, 3, 8.2879, 18.3280},
    {2, 2, 1, 8.0593, 15.8127},  {2, 2, 2, 7.4747, 12.2278},
    {2, 2, 3, 7.4835, 13.5080},  {2, 3, 1, 8.2888, 17.1959},
    {2, 3, 2, 7.4068, 13.0874},  {2, 3, 3, 7.5279, 14.2977}};

SystemModel example2_model() {
  std::vector<int> n{3, 3, 2};
  std::vector<int> type{0, 0, 0, 1, 1, 2, 1, 2};
  std::vector<std::vector<int>> paths = {
      {0, 3, 6},       {1, 4, 6},       {0, 2, 4, 6},    {1, 2, 3, 6},
      {0, 3, 5, 7},    {1, 4, 5, 7},    {0, 2, 4, 5, 7}, {1, 2, 3, 5, 7}};
  return SystemModel(SystemStructure::from_paths(n, type, paths),
                     SurvivalCopula::independence(),
                     {MarginalModel::weibull(2, 3), MarginalModel::weibull(3, 4),
                      MarginalModel::weibull(1, 2)});
}

CostModel example2_costs() {
  return CostModel{{1.5, 1, 2}, {0.75, 0.4, 1}, 10, {7, 4, 5}, {}};
}

// ---- criteria ---------------------------------------------------------

void criterion1_table2() {
  const auto t0 = std::chrono::steady_clock::now();
  auto costs = testutil::bridge_costs();
  int bad = 0;
  std::string detail;
  for (double alpha : {2.0, 1.0}) {
    auto model = testutil::bridge_model(alpha);
    auto ing = cost_ingredients(model, 2.0, CostAccounting::reference);
    for (const auto& row : kTable2) {
      std::vector<int> v{row.v1, row.v2};
      const double c1 = cost1_with(model, costs, v, ing.failed_at_death);
      const double c2 = cost2_with(model, costs, v, 2.0, ing);
      const double e1 = alpha == 2.0 ? row.c1_dep : row.c1_ind;
      const double e2 = alpha == 2.0 ? row.c2_dep : row.c2_ind;
      if (!close_rel(c1, e1, 5e-3) || !close_rel(c2, e2, 5e-3)) {
        ++bad;
        if (detail.empty())
          detail = "first miss at alpha=" + std::to_string(alpha) + " v=(" +
                   std::to_string(row.v1) + "," + std::to_string(row.v2) + ")";
      }
    }
  }
  const double dt = seconds_since(t0);
  report(1, "reference grid of 12 rows x 4 cost columns within 5e-3",
         bad == 0 && dt < 60.0,
         bad ? detail : "elapsed " + std::to_string(dt) + " s");
}

void criterion2_alpha_sweep() {
  auto costs = testutil::bridge_costs();
  const double alphas[11] = {1, 1.2, 1.4, 1.6, 1.8, 2, 2.2, 2.4, 2.6, 2.8, 3};
  const int expect_v1[11] = {3, 3, 2, 2, 2, 2, 2, 2, 2, 2, 2};
  const double expect_c [11] = {6.48, 5.98, 5.63, 5.36, 5.15, 4.99,
                                4.86, 4.75, 4.66, 4.58, 4.52};
  bool ok = true;
  double prev = 1e18;
  for (int a = 0; a < 11; ++a) {
    auto model = testutil::bridge_model(alphas[a]);
    auto r1 = optimize_allocation(model, costs, Objective::cost1);
    ok &= r1.best == std::vector<int>{expect_v1[a], 0};
    ok &= std::fabs(r1.best_value - expect_c[a]) <= 0.01;
    ok &= r1.best_value <= prev + 1e-12;  // cost falls as dependence grows
    prev = r1.best_value;
    auto r2 = optimize_allocation(model, costs, Objective::cost2, 2.0,
                                  CostAccounting::reference);
    ok &= r2.best == std::vector<int>{1, 0};
  }
  report(2, "dependence sweep: redundancy minimizers and minimized values", ok);
}

void criterion3_example2() {
  auto model = example2_model();
  auto costs = example2_costs();
  auto ing = cost_ingredients(model, 0.0, CostAccounting::reference);
  int bad_c1 = 0;
  double worst = 0;
  for (const auto& row : kTable7) {
    std::vector<int> v{row.v1, row.v2, row.v3};
    const double c1 = cost1_with(model, costs, v, ing.failed_at_death);
    const double rel = std::fabs(c1 - row.c1) / row.c1;
    worst = std::max(worst, rel);
    if (rel > 5e-3) ++bad_c1;
  }
  int bad_tau = 0;
  for (const auto& row : kTable7) {
    std::vector<int> v{row.v1, row.v2, row.v3};
    auto r = optimize_tau(model, costs, v, Objective::cost2, 0.02, 1.5,
                          CostAccounting::reference);
    if (std::fabs(r.tau_star - row.tau) > 0.01 ||
        !close_rel(r.value, row.c2, 5e-3))
      ++bad_tau;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%d/18 failure-cost rows outside 5e-3 (worst %.3f rel), "
                "%d/18 age rows outside tolerance; unreproducible source "
                "signature, see README",
                bad_c1, worst, bad_tau);
  report(3, "eight-component example table", bad_c1 == 0 && bad_tau == 0, buf);
}

void criterion4_table8() {
  auto costs = testutil::pareto_sp_costs();
  int bad3 = 0, bad4 = 0;
  for (const auto& row : kTable8) {
    auto model = testutil::pareto_sp_model({row.n1, row.n2, row.n3});
    if (!close_rel(cost3(model, costs), row.c3, 5e-3)) ++bad3;
    if (!close_rel(cost4(model, costs, 1.0, CostAccounting::reference),
                   row.c4, 5e-3))
      ++bad4;
  }
  auto tmpl = testutil::pareto_sp_model({1, 1, 1});
  auto r3 = optimize_subsystem_sizes(tmpl, costs, Objective::cost3);
  auto r4 = optimize_subsystem_sizes(tmpl, costs, Objective::cost4, 1.0,
                                     CostAccounting::reference);
  const bool argmins_ok = r3.best == std::vector<int>{2, 3, 2} &&
                          r4.best == std::vector<int>{2, 2, 2};
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%d/18 sizing rows and %d/18 age rows outside 5e-3; "
                "argmin(cost3)=(%d,%d,%d) argmin(cost4)=(%d,%d,%d)",
                bad3, bad4, r3.best[0], r3.best[1], r3.best[2], r4.best[0],
                r4.best[1], r4.best[2]);
  report(4, "series-parallel sizing table and argmins",
         bad3 == 0 && bad4 == 0 && argmins_ok, buf);
}

void criterion5_clayton_sweep() {
  auto costs = testutil::bridge_costs();
  const double alphas[6] = {0.001, 0.1, 1, 2, 3, 4};
  const int expect_v1[6] = {2, 2, 2, 2, 3, 3};
  const double expect_c[6] = {3.71, 3.97, 5.26, 5.75, 5.98, 6.09};
  bool ok = true;
  for (int a = 0; a < 6; ++a) {
    SystemModel model(testutil::bridge_structure(),
                      SurvivalCopula::clayton(alphas[a]),
                      {MarginalModel::exponential(0.2),
                       MarginalModel::exponential(0.3)});
    auto r = optimize_allocation(model, costs, Objective::cost1);
    ok &= r.best == std::vector<int>{expect_v1[a], 0};
    ok &= std::fabs(r.best_value - expect_c[a]) <= 0.01;
  }
  report(5, "clayton sweep spot checks", ok);
}

void criterion6_cost_sensitivity() {
  auto model = testutil::bridge_model(2.0);
  struct Row {
    double c1, c2, s1, s2;
    int v1, v2;
    double val;
  };
  const Row rows[4] = {{1.6, 1.1, 1.5, 1.0, 3, 0, 4.0492},
                       {6.0, 5.5, 3.0, 2.5, 2, 0, 8.9502},
                       {20.0, 2.0, 10.0, 1.0, 0, 1, 16.2052},
                       {2.0, 20.0, 1.0, 10.0, 3, 0, 9.3402}};
  bool ok = true;
  for (const auto& row : rows) {
    CostModel costs{{row.c1, row.c2}, {row.s1, row.s2}, 10, {9, 6}, {}};
    auto r = optimize_allocation(model, costs, Objective::cost1);
    ok &= r.best == std::vector<int>{row.v1, row.v2};
    ok &= close_rel(r.best_value, row.val, 5e-3);
  }
  report(6, "cost-sensitivity first/last rows", ok);
}

void criterion7_independence_reduction() {
  bool ok = true;
  // bridge example at gumbel alpha = 1
  {
    auto ind = testutil::bridge_model(1.0);
    SystemModel dep(ind.structure, SurvivalCopula::gumbel(1.0), ind.marginals);
    for (double t : {0.5, 1.0, 2.0, 5.0})
      ok &= std::fabs(system_reliability(dep, t) -
                      system_reliability_indep(ind, t)) < 1e-8;
    for (int i : {0, 1}) {
      ok &= std::fabs(expected_failed_at_failure(dep, i) -
                      expected_failed_at_failure_indep(ind, i)) < 1e-8;
      ok &= std::fabs(expected_failures_by_tau_given_survival(dep, i, 2.0) -
                      expected_failures_by_tau_given_survival_indep(ind, i,
                                                                    2.0)) <
            1e-8;
      for (auto state :
           {MarkedState::counted_alive, MarkedState::counted_failed})
        ok &= std::fabs(
                  expected_failed_at_failure_given_early_failure(dep, i, 2.0,
                                                                 state) -
                  expected_failed_at_failure_given_early_failure_indep(
                      ind, i, 2.0, state)) < 1e-8;
    }
  }
  // eight-component example is itself independent: general path must agree
  {
    auto ind = example2_model();
    SystemModel dep(ind.structure, SurvivalCopula::gumbel(1.0), ind.marginals);
    for (int i : {0, 1, 2})
      ok &= std::fabs(expected_failed_at_failure(dep, i) -
                      expected_failed_at_failure_indep(ind, i)) < 1e-8;
    for (double t : {0.2, 0.5})
      ok &= std::fabs(system_reliability(dep, t) -
                      system_reliability_indep(ind, t)) < 1e-8;
  }
  report(7, "independence reductions across bundled examples (1e-8)", ok);
}

void criterion8_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  SimulationConfig config;
  config.samples = 1000000;
  config.seed = 20240808;
  bool ok = true;
  std::string detail;
  auto check = [&](const char* what, double closed,
                   const SimulationEstimate& est) {
    const double gap = std::fabs(est.mean - closed);
    const double limit = 3.0 * std::max(est.std_error, 1e-9);
    if (gap > limit) {
      ok = false;
      if (detail.empty())
        detail = std::string(what) + " off by " + std::to_string(gap) +
                 " > " + std::to_string(limit);
    }
    std::printf("    %-34s closed %.5f  mc %.5f +- %.5f\n", what, closed,
                est.mean, est.std_error);
  };

  {
    auto model = testutil::bridge_model(2.0);
    auto costs = testutil::bridge_costs();
    std::vector<int> v0{0, 0}, v20{2, 0}, v10{1, 0};
    check("ex1 survival(t=1)", system_reliability(model, 1.0),
          simulate_reliability(model, v0, 1.0, config));
    check("ex1 redundant survival(v=(2,0))",
          redundant_reliability(model, v20, 1.0),
          simulate_reliability(model, v20, 1.0, config));
    check("ex1 mttf(v=(1,0))", mttf(model, v10),
          simulate_mttf(model, v10, config));
    for (int i : {0, 1}) {
      check(("ex1 failed at death, type " + std::to_string(i + 1)).c_str(),
            expected_failed_at_failure(model, i),
            simulate_expected_failed(model, i, config));
      check(("ex1 failures by age 2, type " + std::to_string(i + 1)).c_str(),
            expected_failures_by_tau_given_survival(model, i, 2.0),
            simulate_failures_by_tau(model, i, 2.0, config));
      check(("ex1 early-failure count, type " + std::to_string(i + 1)).c_str(),
            expected_failed_at_failure_given_early_failure(
                model, i, 2.0, MarkedState::counted_alive),
            simulate_failed_early(model, i, 2.0, config));
    }
    check("ex1 cost1(v=(2,0))", cost1(model, costs, v20),
          simulate_cost1(model, costs, v20, config));
    check("ex1 cost2(v=0, consistent)",
          cost2(model, costs, v0, 2.0, CostAccounting::consistent),
          simulate_cost2(model, costs, v0, 2.0, config));
  }
  {
    auto model = testutil::pareto_sp_model({2, 3, 2});
    auto costs = testutil::pareto_sp_costs();
    std::vector<int> v0{0, 0, 0};
    check("ex3 survival(t=1)", system_reliability(model, 1.0),
          simulate_reliability(model, v0, 1.0, config));
    check("ex3 mean lifetime", mttf(model, v0),
          simulate_mttf(model, v0, config));
    for (int i : {0, 1, 2})
      check(("ex3 failed at death, type " + std::to_string(i + 1)).c_str(),
            expected_failed_at_failure(model, i),
            simulate_expected_failed(model, i, config));
    check("ex3 failures by age 1, type 2",
          expected_failures_by_tau_given_survival(model, 1, 1.0),
          simulate_failures_by_tau(model, 1, 1.0, config));
    check("ex3 early-failure count, type 2",
          expected_failed_at_failure_given_early_failure(
              model, 1, 1.0, MarkedState::counted_alive),
          simulate_failed_early(model, 1, 1.0, config));
    check("ex3 failure-cost rate (cost3)", cost3(model, costs),
          simulate_cost1(model, costs, v0, config));
    check("ex3 age-cost rate (cost4, consistent)",
          cost4(model, costs, 1.0, CostAccounting::consistent),
          simulate_cost2(model, costs, v0, 1.0, config));
  }
  const double dt = seconds_since(t0);
  report(8, "closed forms agree with the million-run oracle (3 sigma)",
         ok && dt < 300.0,
         ok ? "elapsed " + std::to_string(dt) + " s" : detail);
}

void criterion9_properties() {
  bool ok = true;
  // signature monotonicity across constructors
  for (const auto& st :
       {testutil::bridge_structure(),
        SystemStructure::k_out_of_n(4, std::vector<int>{3, 3}),
        SystemStructure::series_parallel(std::vector<int>{2, 3, 2}),
        example2_model().structure}) {
    const auto& n = st.counts();
    for (std::size_t idx = 0; idx < st.lattice_size(); ++idx) {
      auto l = st.unflatten(idx);
      for (int k = 0; k < st.types(); ++k) {
        if (l[k] == n[k]) continue;
        auto up = l;
        ++up[k];
        ok &= st.phi(l) <= st.phi(up) + 1e-15;
      }
    }
  }
  // copula margin identities
  {
    Rng rng(77);
    for (const auto& c :
         {SurvivalCopula::gumbel(2.0), SurvivalCopula::clayton(1.0),
          SurvivalCopula::independence()}) {
      for (int it = 0; it < 1000; ++it) {
        const double x = 0.02 + 0.96 * rng.uniform();
        std::vector<double> u(3, 1.0);
        u[it % 3] = x;
        ok &= std::fabs(c.eval(u) - x) < 1e-12;
      }
    }
  }
  // reliability monotone in t and v
  {
    auto model = testutil::bridge_model(2.0);
    ReliabilityKernel kernel(model);
    double prev = 1.0;
    for (int k = 1; k <= 200; ++k) {
      const double cur = kernel.survival(0.08 * k);
      ok &= cur <= prev + 1e-12 && cur >= -1e-9 && cur <= 1 + 1e-9;
      prev = cur;
    }
    for (double t : {1.0, 3.0})
      for (int k = 0; k < 2; ++k) {
        std::vector<int> lo{0, 0}, hi{0, 0};
        hi[k] = 2;
        ok &= kernel.survival_redundant(hi, t) >=
              kernel.survival_redundant(lo, t) - 1e-12;
      }
  }
  // pure parallel loses everything by death
  {
    SystemModel par(SystemStructure::series_parallel(std::vector<int>{4}),
                    SurvivalCopula::gumbel(1.8),
                    {MarginalModel::exponential(0.6)});
    ok &= std::fabs(expected_failed_at_failure(par, 0) - 4.0) < 1e-6;
  }
  // argmin invariance under uniform cost scaling
  {
    auto model = testutil::bridge_model(2.0);
    auto costs = testutil::bridge_costs();
    CostModel scaled = costs;
    const double lambda = 2.75;
    for (auto& x : scaled.c) x *= lambda;
    for (auto& x : scaled.c_star) x *= lambda;
    scaled.c_fixed *= lambda;
    auto a = optimize_allocation(model, costs, Objective::cost1);
    auto b = optimize_allocation(model, scaled, Objective::cost1);
    ok &= a.best == b.best;
    ok &= std::fabs(b.best_value - lambda * a.best_value) < 1e-9;
  }
  report(9, "structural property suite", ok);
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion1_table2();
  criterion2_alpha_sweep();
  criterion3_example2();
  criterion4_table8();
  criterion5_clayton_sweep();
  criterion6_cost_sensitivity();
  criterion7_independence_reduction();
  criterion8_oracle();
  criterion9_properties();
  std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures;
}
