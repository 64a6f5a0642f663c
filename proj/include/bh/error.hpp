#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bh {

enum class ErrorCode {
  invalid_argument,
  parse_error,
  unknown_conway_polynomial,
  not_irreducible,
  not_generator,
  capacity_exceeded,
  division_by_zero,
  dimension_mismatch,
  log_of_zero,
  subfield_mismatch,
  degree_too_low,
  not_a_unit,
  modulus_mismatch,
  size_exceeds_set,
  cap_too_small,
  io_error,
  verification_failed,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace bh
