#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bh/sets.hpp"

namespace bh {

/// Two different multisets of size h with the same sum.
struct BhViolation {
  std::vector<std::uint64_t> lhs;
  std::vector<std::uint64_t> rhs;
};

struct BhCheck {
  bool ok = true;
  std::optional<BhViolation> witness;

  explicit operator bool() const noexcept { return ok; }
};

/// Counts the distinct h-fold multiset sums mod M against C(k+h-1, h).
BhCheck is_bh_cyclic(const CyclicSet& set, int h);
BhCheck is_bh_integer(const IntSet& set, int h);

/// Throws NotAUnit / ModulusMismatch.
CyclicSet apply_affine(const CyclicSet& set, const AffineMap& map);

/// Orbit representative under x -> d*x + s: the lexicographically least
/// sorted element sequence written in [0, M).
struct CanonicalForm {
  std::uint64_t modulus = 0;
  std::vector<std::uint64_t> elements;

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

CanonicalForm canonical_form(const CyclicSet& set);

/// A map with apply_affine(a, map) == b, smallest d first, then smallest s.
/// Throws ModulusMismatch.
std::optional<AffineMap> affinely_equivalent(const CyclicSet& a, const CyclicSet& b);

/// max - min
std::uint64_t diameter(const IntSet& set);
/// max - min + 1: the least n such that a translate fits in [1, n].
std::uint64_t span_needed(const IntSet& set);

/// Circular gaps of residues sorted in [0, M): g[i] = a[i+1] - a[i], the
/// last gap wrapping through M.
std::vector<std::uint64_t> circular_gaps(const std::vector<std::uint64_t>& sorted_zero_based, std::uint64_t modulus);

/// Sorted residues of d*set in [0, M).
std::vector<std::uint64_t> dilate_zero_based(const CyclicSet& set, std::uint64_t d);

}  // namespace bh
