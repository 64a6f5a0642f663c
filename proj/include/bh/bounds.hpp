#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace bh {

enum class Regime { unconditional, large_k, bhp, rh, constructive };

/// "unconditional", "large-k", "BHP", "RH", "constructive"
std::string_view to_string(Regime r) noexcept;
/// Case-insensitive; throws InvalidArgument.
Regime parse_regime(std::string_view text);

/// inverse: upper bound on R_h^{-1}(k). density: lower bound on R_h(n).
enum class Quantity { inverse, density };

std::string_view to_string(Quantity q) noexcept;

struct BoundOptions {
  /// MPFR working precision in bits (at least 128).
  unsigned precision_bits = 256;
  /// Significant decimal digits in BoundReport::value.
  unsigned digits = 40;
};

struct BoundReport {
  int h = 0;
  Quantity quantity = Quantity::inverse;
  /// k for inverse bounds, n for density bounds, as a decimal integer.
  std::string argument;
  Regime regime = Regime::unconditional;
  /// "<", "<=", ">", ">=": how the true value relates to `value`.
  std::string relation;
  /// Decimal, rounded away from the true quantity: up for inverse bounds,
  /// down for density bounds. Clamped to "0" when vacuous.
  std::string value;
  /// Unclamped formula value, same rounding.
  std::string raw_value;
  /// A density bound whose formula went negative.
  bool vacuous = false;
  std::string formula;
  /// When the bound applies; empty for constructive bounds.
  std::string hypotheses;
  unsigned precision_bits = 0;
  /// Constructive bounds: the prime power and family that achieve the value.
  std::optional<std::uint64_t> q;
  std::string construction;
};

struct BoundPair {
  BoundReport inverse;
  BoundReport density;
};

/// Formula bound on R_h^{-1}(k). k is a decimal integer >= 4.
BoundReport inverse_bound(int h, std::string_view k, Regime regime, const BoundOptions& options = {});
/// Formula bound on R_h(n). n is a decimal integer >= h + 3.
BoundReport density_bound(int h, std::string_view n, Regime regime, const BoundOptions& options = {});

BoundPair unconditional_bounds(int h, std::string_view k, std::string_view n, const BoundOptions& options = {});
/// regime is large_k, bhp or rh.
BoundPair conditional_bounds(int h, std::string_view k, std::string_view n, Regime regime,
                             const BoundOptions& options = {});

/// Exact bound from Bose and Singer sets: 1, 2, h + 2 for k <= 3, otherwise
/// the smaller of q^h - 1 (least prime power q >= k) and (q^(h+1)-1)/(q-1)
/// (least prime power q >= k - 1). Throws CapacityExceeded past 2^64.
BoundReport constructive_bound(int h, std::uint64_t k);

/// True when the decimal value of report is strictly greater than x.
bool value_exceeds(const BoundReport& report, std::uint64_t x);

}  // namespace bh
