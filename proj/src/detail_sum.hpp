#pragma once

#include <cstdint>

namespace rda::detail {

// Compensated accumulator for the alternating-sign binomial sums.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

inline double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * (std::uint64_t)(n - i) / (i + 1);
  return (double)r;
}

inline double parity(int s) { return (s % 2) ? -1.0 : 1.0; }

}  // namespace rda::detail
