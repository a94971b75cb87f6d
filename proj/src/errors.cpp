#include "redundalloc/errors.hpp"

namespace rda {

const char* errc_name(errc c) {
  switch (c) {
    case errc::missing_entry: return "MissingEntry";
    case errc::non_monotone: return "NonMonotone";
    case errc::out_of_range: return "OutOfRange";
    case errc::invalid_k: return "InvalidK";
    case errc::too_large: return "TooLarge";
    case errc::bad_index: return "BadIndex";
    case errc::negative_time: return "NegativeTime";
    case errc::bad_parameter: return "BadParameter";
    case errc::wrong_copula: return "WrongCopula";
    case errc::boundary_argument: return "BoundaryArgument";
    case errc::infeasible: return "Infeasible";
    case errc::empty_grid: return "EmptyGrid";
    case errc::mismatched_sizes: return "MismatchedSizes";
    case errc::parse_error: return "ParseError";
    case errc::io_error: return "IoError";
    case errc::quadrature_failure: return "QuadratureFailure";
    case errc::divergence_suspected: return "DivergenceSuspected";
    case errc::divergent_integral: return "DivergentIntegral";
    case errc::degenerate_denominator: return "DegenerateDenominator";
    case errc::zero_survival: return "ZeroSurvival";
    case errc::zero_failure_probability: return "ZeroFailureProbability";
    case errc::bracket_error: return "BracketError";
  }
  return "Unknown";
}

bool errc_is_validation(errc c) {
  switch (c) {
    case errc::quadrature_failure:
    case errc::divergence_suspected:
    case errc::divergent_integral:
    case errc::degenerate_denominator:
    case errc::zero_survival:
    case errc::zero_failure_probability:
    case errc::bracket_error:
      return false;
    default:
      return true;
  }
}

}  // namespace rda
