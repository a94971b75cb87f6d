#include "redundalloc/marginals.hpp"

#include <cmath>
#include <limits>

#include "redundalloc/errors.hpp"

namespace rda {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

MarginalModel MarginalModel::exponential(double rate) {
  require(rate > 0, errc::bad_parameter, "exponential rate must be > 0");
  return MarginalModel(Family::exponential, rate, 0.0);
}

MarginalModel MarginalModel::weibull(double shape, double rate) {
  require(shape > 0, errc::bad_parameter, "weibull shape must be > 0");
  require(rate > 0, errc::bad_parameter, "weibull rate must be > 0");
  return MarginalModel(Family::weibull, shape, rate);
}

MarginalModel MarginalModel::pareto_linear(double rate, double exponent) {
  require(rate > 0, errc::bad_parameter, "pareto rate must be > 0");
  require(exponent > 0, errc::bad_parameter, "pareto exponent must be > 0");
  return MarginalModel(Family::pareto_linear, rate, exponent);
}

MarginalModel MarginalModel::custom(std::function<double(double)> reliability,
                                    std::function<double(double)> density,
                                    std::function<double(double)> quantile) {
  MarginalModel m(Family::custom, 0.0, 0.0);
  m.fbar_ = std::move(reliability);
  m.dens_ = std::move(density);
  m.quant_ = std::move(quantile);
  return m;
}

double MarginalModel::reliability(double t) const {
  require(t >= 0, errc::negative_time, "time must be >= 0");
  switch (family_) {
    case Family::exponential:
      return std::exp(-a_ * t);
    case Family::weibull:
      return std::exp(-b_ * std::pow(t, a_));
    case Family::pareto_linear:
      return std::pow(1.0 + a_ * t, -b_);
    case Family::custom:
      return fbar_(t);
  }
  return 0.0;
}

double MarginalModel::density(double t) const {
  require(t >= 0, errc::negative_time, "time must be >= 0");
  switch (family_) {
    case Family::exponential:
      return a_ * std::exp(-a_ * t);
    case Family::weibull:
      if (t == 0.0) {
        if (a_ > 1.0) return 0.0;
        if (a_ == 1.0) return b_;
        return kInf;
      }
      return b_ * a_ * std::pow(t, a_ - 1.0) * std::exp(-b_ * std::pow(t, a_));
    case Family::pareto_linear:
      return b_ * a_ * std::pow(1.0 + a_ * t, -b_ - 1.0);
    case Family::custom:
      return dens_(t);
  }
  return 0.0;
}

double MarginalModel::quantile(double u) const {
  require(u > 0.0 && u <= 1.0, errc::out_of_range,
          "survival level must lie in (0, 1]");
  if (u == 1.0) return 0.0;
  switch (family_) {
    case Family::exponential:
      return -std::log(u) / a_;
    case Family::weibull:
      return std::pow(-std::log(u) / b_, 1.0 / a_);
    case Family::pareto_linear:
      return (std::pow(u, -1.0 / b_) - 1.0) / a_;
    case Family::custom:
      return quant_(u);
  }
  return 0.0;
}

double MarginalModel::mean() const {
  switch (family_) {
    case Family::exponential:
      return 1.0 / a_;
    case Family::weibull:
      return std::tgamma(1.0 + 1.0 / a_) / std::pow(b_, 1.0 / a_);
    case Family::pareto_linear:
      return b_ > 1.0 ? 1.0 / (a_ * (b_ - 1.0)) : kInf;
    case Family::custom:
      return kInf;  // unknown; callers fall back to quadrature
  }
  return kInf;
}

double MarginalModel::tail_exponent() const {
  return family_ == Family::pareto_linear ? b_ : kInf;
}

std::string MarginalModel::family_name() const {
  switch (family_) {
    case Family::exponential: return "exponential";
    case Family::weibull: return "weibull";
    case Family::pareto_linear: return "pareto_linear";
    case Family::custom: return "custom";
  }
  return "?";
}

}  // namespace rda
