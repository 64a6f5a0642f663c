#include "bh/error.hpp"

namespace bh {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::unknown_conway_polynomial: return "UnknownConwayPolynomial";
    case ErrorCode::not_irreducible: return "NotIrreducible";
    case ErrorCode::not_generator: return "NotGenerator";
    case ErrorCode::capacity_exceeded: return "CapacityExceeded";
    case ErrorCode::division_by_zero: return "DivisionByZero";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::log_of_zero: return "LogOfZero";
    case ErrorCode::subfield_mismatch: return "SubfieldMismatch";
    case ErrorCode::degree_too_low: return "DegreeTooLow";
    case ErrorCode::not_a_unit: return "NotAUnit";
    case ErrorCode::modulus_mismatch: return "ModulusMismatch";
    case ErrorCode::size_exceeds_set: return "SizeExceedsSet";
    case ErrorCode::cap_too_small: return "CapTooSmall";
    case ErrorCode::io_error: return "IoError";
    case ErrorCode::verification_failed: return "VerificationFailed";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace bh
