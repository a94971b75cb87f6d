#pragma once

#include <functional>
#include <string>

namespace rda {

// Component lifetime model for one type. Built-in families:
//   exponential:   Fbar(t) = exp(-theta t)
//   weibull:       Fbar(t) = exp(-beta t^shape)
//   pareto_linear: Fbar(t) = (1 + theta t)^(-a)
// A custom model supplies its own (reliability, density, quantile) triple.
class MarginalModel {
 public:
  enum class Family { exponential, weibull, pareto_linear, custom };

  static MarginalModel exponential(double rate);
  static MarginalModel weibull(double shape, double rate);
  static MarginalModel pareto_linear(double rate, double exponent);
  static MarginalModel custom(std::function<double(double)> reliability,
                              std::function<double(double)> density,
                              std::function<double(double)> quantile);

  // Fbar(t), t >= 0.
  double reliability(double t) const;
  // -d Fbar / dt, t >= 0.
  double density(double t) const;
  // Smallest t with Fbar(t) <= u, u in (0, 1].
  double quantile(double u) const;

  // Mean lifetime, or +inf when the integral diverges.
  double mean() const;
  // Polynomial tail exponent: Fbar(t) ~ t^(-k). +inf for exponential tails.
  double tail_exponent() const;

  Family family() const { return family_; }
  double param_a() const { return a_; }
  double param_b() const { return b_; }
  std::string family_name() const;

 private:
  MarginalModel(Family f, double a, double b) : family_(f), a_(a), b_(b) {}

  Family family_;
  double a_ = 0.0;  // rate (exponential, pareto) or shape (weibull)
  double b_ = 0.0;  // rate (weibull) or exponent (pareto)
  std::function<double(double)> fbar_, dens_, quant_;
};

}  // namespace rda
