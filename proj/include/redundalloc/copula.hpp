#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "redundalloc/rng.hpp"

namespace rda {

// One repeated copula argument: `value` appearing `count` times.
struct ArgBlock {
  double value = 1.0;
  int count = 0;
};

// Exchangeable survival copula. Arguments are passed as repeat blocks so the
// deep inclusion-exclusion sums can evaluate in O(#blocks) regardless of
// dimension. Families:
//   independence:    C(u) = prod u_k
//   gumbel-hougaard: C(u) = exp(-(sum (-ln u_k)^alpha)^(1/alpha)), alpha >= 1
//   clayton:         C(u) = (sum u_k^(-1/alpha) - n + 1)^(-alpha), alpha > 0
// The clayton form is written with alpha as the generator exponent, so larger
// alpha weakens the dependence and the independence limit is alpha -> inf.
class SurvivalCopula {
 public:
  enum class Family { independence, gumbel, clayton, custom };

  static SurvivalCopula independence();
  static SurvivalCopula gumbel(double alpha);
  static SurvivalCopula clayton(double alpha);
  // Custom exchangeable copula from a plain CDF; partials fall back to
  // central differences with relative step 1e-6.
  static SurvivalCopula custom(
      std::function<double(std::span<const double>)> cdf);

  double eval(std::span<const ArgBlock> args) const;
  double eval(std::span<const double> u) const;

  // Partial derivative with respect to one slot of block `k` (all slots of a
  // block are interchangeable). The block's count must be >= 1.
  double partial(std::span<const ArgBlock> args, int k) const;
  double partial(std::span<const double> u, int k) const;

  // Draw a vector whose joint CDF is this copula (gamma frailty for clayton,
  // positive-stable frailty for gumbel).
  void sample(int dim, Rng& rng, std::span<double> out) const;

  bool is_independence() const {
    return family_ == Family::independence ||
           (family_ == Family::gumbel && alpha_ == 1.0);
  }
  Family family() const { return family_; }
  double alpha() const { return alpha_; }
  std::string family_name() const;

 private:
  SurvivalCopula(Family f, double a) : family_(f), alpha_(a) {}

  Family family_;
  double alpha_;
  std::function<double(std::span<const double>)> cdf_;
};

}  // namespace rda
