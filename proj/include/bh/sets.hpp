#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bh/field.hpp"

namespace bh {

enum class Family { bose, singer };

std::string_view to_string(Family f) noexcept;
/// "bose" / "singer", case-insensitive; throws InvalidArgument.
Family parse_family(std::string_view text);

/// Provenance of a constructed set.
struct BhParams {
  Family family = Family::bose;
  int h = 0;
  PrimePower q;
  /// Exponent as reduced by the constructor (mod q^h-1 or q^(h+1)-1).
  std::uint64_t b = 0;

  friend bool operator==(const BhParams&, const BhParams&) = default;
};

/// A subset of Z/MZ. Elements are kept sorted and written in [1, M], the
/// zero class being written as M.
struct CyclicSet {
  std::uint64_t modulus = 0;
  std::vector<std::uint64_t> elements;
  std::optional<BhParams> meta;

  /// Reduces mod M, sorts, and rejects repeated classes.
  static CyclicSet from_residues(std::uint64_t modulus, std::span<const std::uint64_t> residues);

  std::size_t size() const noexcept { return elements.size(); }

  /// Set equality; provenance is ignored.
  friend bool operator==(const CyclicSet& a, const CyclicSet& b) noexcept {
    return a.modulus == b.modulus && a.elements == b.elements;
  }
};

/// Finite set of nonnegative integers, strictly increasing.
struct IntSet {
  std::vector<std::uint64_t> elements;

  /// Sorts and rejects duplicates.
  static IntSet from(std::vector<std::uint64_t> values);

  std::size_t size() const noexcept { return elements.size(); }
  friend bool operator==(const IntSet&, const IntSet&) = default;
  friend auto operator<=>(const IntSet&, const IntSet&) = default;
};

/// x -> d*x + s on Z/MZ, gcd(d, M) = 1.
struct AffineMap {
  std::uint64_t d = 1;
  std::uint64_t s = 0;
  std::uint64_t modulus = 0;

  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

}  // namespace bh
