#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "bh/field.hpp"
#include "bh/sets.hpp"

namespace bh {

/// Sufficient conditions for two parameters b, e to give affinely
/// equivalent sets. i-iii apply to Bose sets, iv-vii to Singer sets;
/// `direct` marks an equivalence found by explicit search.
enum class Criterion { i, ii, iii, iv, v, vi, vii_restricted, vii_full, direct };

std::string_view to_string(Criterion c) noexcept;

/// fast: only the r = 0, t = 1 slice of criterion vii. full: every (r, t, w).
enum class SingerMode { fast, full };

std::string_view to_string(SingerMode m) noexcept;
SingerMode parse_singer_mode(std::string_view text);

/// One union performed while classifying. The criterion holds literally for
/// the pair (b, e); e may lie outside the window and is folded in by i / iv.
struct Merge {
  std::uint64_t b = 0;
  std::uint64_t e = 0;
  Criterion criterion = Criterion::direct;
};

struct EquivalenceClass {
  std::uint64_t representative = 0;  // smallest member
  std::vector<std::uint64_t> members;
};

struct StageCount {
  Criterion stage = Criterion::i;
  std::size_t classes = 0;
};

struct BClassification {
  Family family = Family::bose;
  int h = 0;
  PrimePower q;
  SingerMode mode = SingerMode::fast;
  /// b values are taken from [1, window].
  std::uint64_t window = 0;
  std::vector<EquivalenceClass> classes;
  /// Only merges that joined two distinct classes are recorded.
  std::vector<Merge> merges;
  /// Class count after the candidate filter, then after each criterion.
  std::vector<StageCount> counts_after_stage;

  std::vector<std::uint64_t> representatives() const;
  /// Representative of the class containing b (b must be a candidate).
  std::uint64_t representative_of(std::uint64_t b) const;
};

/// Candidate filter (criterion i folds b into [1, (q^h-1)/(q-1)]), then the
/// Frobenius orbits of iii, then the translation classes of ii.
BClassification bose_b_classes(const FieldCtx& ctx, int h, const PrimePower& q);

/// Candidates in [1, M] of full degree (iv), then v, vi and vii.
BClassification singer_b_classes(const FieldCtx& ctx, int h, const PrimePower& q, SingerMode mode);

BClassification classify(const FieldCtx& ctx, Family family, int h, const PrimePower& q,
                         SingerMode mode = SingerMode::fast);

/// Re-checks the defining condition of merge.criterion for (merge.b, merge.e).
bool merge_condition_holds(const FieldCtx& ctx, const BClassification& cls, const Merge& merge);

struct CertificationReport {
  std::size_t pairs_checked = 0;
  /// Representative pairs whose sets turned out to be equivalent.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> equivalent_pairs;
  /// Input classification with `direct` merges applied.
  BClassification refined;

  bool all_inequivalent() const noexcept { return equivalent_pairs.empty(); }
};

/// Builds the set of every representative and tests each pair directly.
CertificationReport certify_inequivalence(const FieldCtx& ctx, const BClassification& cls);

}  // namespace bh
