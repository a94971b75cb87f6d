#include <cmath>

#include <doctest.h>

#include "redundalloc/errors.hpp"
#include "redundalloc/marginals.hpp"
#include "redundalloc/quadrature.hpp"

using rda::MarginalModel;

TEST_CASE("reliability formulas") {
  auto e = MarginalModel::exponential(0.2);
  CHECK(e.reliability(0) == 1.0);
  auto w = MarginalModel::weibull(2, 3);
  CHECK(w.reliability(1) == doctest::Approx(std::exp(-3.0)).epsilon(1e-14));
  auto p = MarginalModel::pareto_linear(0.4, 2);
  CHECK(p.reliability(1) == doctest::Approx(std::pow(1.4, -2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(e.reliability(-1), rda::Error);
}

TEST_CASE("density formulas and finite differences") {
  auto e = MarginalModel::exponential(0.7);
  CHECK(e.density(0) == doctest::Approx(0.7));
  auto w = MarginalModel::weibull(2, 3);
  CHECK(w.density(1) == doctest::Approx(6.0 * std::exp(-3.0)).epsilon(1e-12));
  auto p = MarginalModel::pareto_linear(0.4, 2);
  CHECK(p.density(0) == doctest::Approx(0.8).epsilon(1e-12));

  for (const auto& m : {MarginalModel::exponential(0.5),
                        MarginalModel::weibull(1.7, 2.2),
                        MarginalModel::pareto_linear(0.9, 3.0)}) {
    for (double t : {0.2, 0.7, 1.3, 2.9}) {
      const double h = 1e-6 * std::max(1.0, t);
      const double fd = (m.reliability(t - h) - m.reliability(t + h)) / (2 * h);
      CHECK(m.density(t) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("quantile closed forms and round trips") {
  auto e = MarginalModel::exponential(1.0);
  CHECK(e.quantile(std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  auto w = MarginalModel::weibull(2, 3);
  CHECK(w.quantile(std::exp(-3.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.quantile(1.0) == 0.0);
  CHECK(w.quantile(1.0) == 0.0);
  CHECK_THROWS_AS(e.quantile(0.0), rda::Error);
  CHECK_THROWS_AS(e.quantile(1.5), rda::Error);

  for (const auto& m : {MarginalModel::exponential(0.3),
                        MarginalModel::weibull(2.5, 1.2),
                        MarginalModel::pareto_linear(0.4, 2.0)}) {
    for (int k = 1; k <= 100; ++k) {
      const double t = 0.05 * k;
      const double back = m.quantile(m.reliability(t));
      CHECK(back == doctest::Approx(t).epsilon(1e-10));
    }
  }
}

TEST_CASE("densities integrate to one") {
  for (const auto& m : {MarginalModel::exponential(0.2),
                        MarginalModel::weibull(2, 3),
                        MarginalModel::pareto_linear(0.4, 2)}) {
    auto r = rda::quad::integrate_halfline([&](double t) { return m.density(t); });
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("custom models plug in") {
  auto m = MarginalModel::custom(
      [](double t) { return std::exp(-t); },
      [](double t) { return std::exp(-t); },
      [](double u) { return -std::log(u); });
  CHECK(m.reliability(2.0) == doctest::Approx(std::exp(-2.0)));
  CHECK(m.quantile(m.reliability(0.7)) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("exponential and crossing weibull swap order once") {
  // exp(-0.2 t) versus exp(-0.07 t^2) cross near t = 2.857
  auto f1 = MarginalModel::exponential(0.2);
  auto f2 = MarginalModel::weibull(2, 0.07);
  int sign_changes = 0;
  double prev = f1.reliability(0.01) - f2.reliability(0.01);
  for (int k = 2; k <= 4000; ++k) {
    const double t = 0.01 * k * 2.5;
    const double cur = f1.reliability(t) - f2.reliability(t);
    if ((prev < 0) != (cur < 0) && cur != 0) {
      ++sign_changes;
      CHECK(t == doctest::Approx(0.2 / 0.07).epsilon(0.02));  // 2.857
    }
    prev = cur;
  }
  CHECK(sign_changes == 1);
}
