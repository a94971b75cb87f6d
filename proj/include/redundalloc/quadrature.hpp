#pragma once

#include <functional>

namespace rda::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int panels = 0;
};

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_panels = 10000;
};

using Fn = std::function<double(double)>;

// Adaptive 15-point Gauss-Kronrod on [a, b].
Result integrate_interval(const Fn& f, double a, double b, Options opt = {});

// Integral over [0, inf) via the substitution t = x / (1 - x).
Result integrate_halfline(const Fn& f, Options opt = {});

struct MinResult {
  double x = 0.0;
  double value = 0.0;
  bool on_boundary = false;  // minimum found at a bracket endpoint
  int evaluations = 0;
};

// Golden-section search to width `tol`, then one parabolic refinement.
MinResult minimize_scalar(const Fn& f, double lo, double hi, double tol);

}  // namespace rda::quad
