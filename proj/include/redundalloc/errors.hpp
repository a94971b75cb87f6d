#pragma once

#include <stdexcept>
#include <string>

namespace rda {

// Validation errors are caller mistakes (bad parameters, inconsistent
// tables); numeric errors are evaluation failures at runtime.
enum class errc {
  missing_entry,
  non_monotone,
  out_of_range,
  invalid_k,
  too_large,
  bad_index,
  negative_time,
  bad_parameter,
  wrong_copula,
  boundary_argument,
  infeasible,
  empty_grid,
  mismatched_sizes,
  parse_error,
  io_error,
  quadrature_failure,
  divergence_suspected,
  divergent_integral,
  degenerate_denominator,
  zero_survival,
  zero_failure_probability,
  bracket_error,
};

const char* errc_name(errc c);
bool errc_is_validation(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace rda
