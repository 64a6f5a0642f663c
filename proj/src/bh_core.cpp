#include "bh/bh_core.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "bh/error.hpp"
#include "bh/number_theory.hpp"

namespace bh {

std::string_view to_string(Family f) noexcept { return f == Family::bose ? "bose" : "singer"; }

Family parse_family(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "bose") return Family::bose;
  if (lower == "singer") return Family::singer;
  fail(ErrorCode::invalid_argument, "unknown family '" + std::string(text) + "' (expected bose or singer)");
}

CyclicSet CyclicSet::from_residues(std::uint64_t modulus, std::span<const std::uint64_t> residues) {
  if (modulus == 0) fail(ErrorCode::invalid_argument, "modulus must be positive");
  CyclicSet out;
  out.modulus = modulus;
  out.elements.reserve(residues.size());
  for (auto r : residues) out.elements.push_back(to_one_based(r, modulus));
  std::sort(out.elements.begin(), out.elements.end());
  if (std::adjacent_find(out.elements.begin(), out.elements.end()) != out.elements.end()) {
    fail(ErrorCode::invalid_argument, "residues repeat modulo " + std::to_string(modulus));
  }
  return out;
}

IntSet IntSet::from(std::vector<std::uint64_t> values) {
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end()) {
    fail(ErrorCode::invalid_argument, "integer set has repeated elements");
  }
  return IntSet{std::move(values)};
}

namespace {

// Enumerates nondecreasing index tuples of length h over k items and looks
// for two tuples with equal reduced sums.
template <class Reduce>
BhCheck check_sums(const std::vector<std::uint64_t>& elems, int h, Reduce reduce) {
  if (h < 2) fail(ErrorCode::invalid_argument, "h must be >= 2");
  const std::size_t k = elems.size();
  if (k == 0) return {};
  const auto hh = static_cast<std::size_t>(h);

  std::vector<std::uint32_t> tuples;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> sums;
  std::vector<std::uint32_t> idx(hh, 0);
  for (;;) {
    std::uint64_t s = 0;
    for (auto i : idx) s += elems[i];
    sums.emplace_back(reduce(s), static_cast<std::uint32_t>(sums.size()));
    tuples.insert(tuples.end(), idx.begin(), idx.end());
    // next nondecreasing tuple
    std::size_t pos = hh;
    while (pos > 0 && idx[pos - 1] + 1 == k) --pos;
    if (pos == 0) break;
    const std::uint32_t v = idx[pos - 1] + 1;
    for (std::size_t j = pos - 1; j < hh; ++j) idx[j] = v;
  }

  std::sort(sums.begin(), sums.end());
  for (std::size_t i = 1; i < sums.size(); ++i) {
    if (sums[i].first != sums[i - 1].first) continue;
    BhViolation w;
    for (std::size_t j = 0; j < hh; ++j) {
      w.lhs.push_back(elems[tuples[sums[i - 1].second * hh + j]]);
      w.rhs.push_back(elems[tuples[sums[i].second * hh + j]]);
    }
    return BhCheck{false, std::move(w)};
  }
  return {};
}

}  // namespace

BhCheck is_bh_cyclic(const CyclicSet& set, int h) {
  const std::uint64_t m = set.modulus;
  return check_sums(set.elements, h, [m](std::uint64_t s) { return s % m; });
}

BhCheck is_bh_integer(const IntSet& set, int h) {
  return check_sums(set.elements, h, [](std::uint64_t s) { return s; });
}

CyclicSet apply_affine(const CyclicSet& set, const AffineMap& map) {
  if (map.modulus != set.modulus) fail(ErrorCode::modulus_mismatch, "affine map modulus differs from set modulus");
  const std::uint64_t m = set.modulus;
  if (gcd(map.d % m, m) != 1) fail(ErrorCode::not_a_unit, std::to_string(map.d) + " is not a unit mod " + std::to_string(m));
  std::vector<std::uint64_t> image;
  image.reserve(set.size());
  for (auto a : set.elements) image.push_back((mul_mod(a, map.d, m) + map.s % m) % m);
  return CyclicSet::from_residues(m, image);
}

std::vector<std::uint64_t> dilate_zero_based(const CyclicSet& set, std::uint64_t d) {
  std::vector<std::uint64_t> out;
  out.reserve(set.size());
  for (auto a : set.elements) out.push_back(mul_mod(a, d, set.modulus));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> circular_gaps(const std::vector<std::uint64_t>& sorted, std::uint64_t modulus) {
  const std::size_t k = sorted.size();
  std::vector<std::uint64_t> gaps(k);
  for (std::size_t i = 0; i + 1 < k; ++i) gaps[i] = sorted[i + 1] - sorted[i];
  if (k != 0) gaps[k - 1] = sorted[0] + modulus - sorted[k - 1];
  return gaps;
}

namespace {

// Index r minimising the rotation gaps[r], gaps[r+1], ... lexicographically.
std::size_t least_rotation(const std::vector<std::uint64_t>& gaps) {
  const std::size_t k = gaps.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < k; ++r) {
    for (std::size_t i = 0; i < k; ++i) {
      const auto x = gaps[(r + i) % k], y = gaps[(best + i) % k];
      if (x != y) {
        if (x < y) best = r;
        break;
      }
    }
  }
  return best;
}

}  // namespace

CanonicalForm canonical_form(const CyclicSet& set) {
  const std::uint64_t m = set.modulus;
  const std::size_t k = set.size();
  if (k == 0) fail(ErrorCode::invalid_argument, "canonical form of an empty set");
  // The sorted translate starting at element r is 0, g_r, g_r + g_{r+1}, ...,
  // so comparing element sequences is the same as comparing gap rotations.
  std::vector<std::uint64_t> best;
  for (auto d : units_mod(m)) {
    const auto gaps = circular_gaps(dilate_zero_based(set, d), m);
    const std::size_t r = least_rotation(gaps);
    std::vector<std::uint64_t> rotated(k - 1);
    for (std::size_t i = 0; i + 1 < k; ++i) rotated[i] = gaps[(r + i) % k];
    if (best.empty() && k > 1) {
      best = std::move(rotated);
    } else if (rotated < best) {
      best = std::move(rotated);
    }
  }
  CanonicalForm out{m, {0}};
  for (auto g : best) out.elements.push_back(out.elements.back() + g);
  return out;
}

std::optional<AffineMap> affinely_equivalent(const CyclicSet& a, const CyclicSet& b) {
  if (a.modulus != b.modulus) fail(ErrorCode::modulus_mismatch, "sets live in different cyclic groups");
  if (a.size() != b.size()) return std::nullopt;
  const std::uint64_t m = a.modulus;
  const std::size_t k = a.size();
  if (k == 0) return AffineMap{1, 0, m};

  std::vector<std::uint64_t> target;
  for (auto x : b.elements) target.push_back(x % m);
  std::sort(target.begin(), target.end());
  const auto target_gaps = circular_gaps(target, m);

  for (auto d : units_mod(m)) {
    const auto image = dilate_zero_based(a, d);
    const auto gaps = circular_gaps(image, m);
    std::optional<std::uint64_t> best_shift;
    for (std::size_t r = 0; r < k; ++r) {
      bool match = true;
      for (std::size_t i = 0; i < k && match; ++i) match = gaps[(r + i) % k] == target_gaps[i];
      if (!match) continue;
      const std::uint64_t s = (target[0] + m - image[r]) % m;
      if (!best_shift || s < *best_shift) best_shift = s;
    }
    if (best_shift) return AffineMap{d % m, *best_shift, m};
  }
  return std::nullopt;
}

std::uint64_t diameter(const IntSet& set) {
  if (set.elements.empty()) fail(ErrorCode::invalid_argument, "diameter of an empty set");
  return set.elements.back() - set.elements.front();
}

std::uint64_t span_needed(const IntSet& set) { return diameter(set) + 1; }

}  // namespace bh
