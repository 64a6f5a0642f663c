#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bh/field.hpp"
#include "bh/sets.hpp"

namespace bh {

enum class Method { affine_subset, greedy, exhaustive };

std::string_view to_string(Method m) noexcept;

struct Provenance {
  Method method = Method::affine_subset;
  /// Set for affine_subset results when the source set carried parameters.
  std::optional<BhParams> params;
  /// Dilation applied to the source set.
  std::uint64_t d = 0;
  /// Residue in [0, M) of d * set where the window begins.
  std::uint64_t start = 0;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct SearchResult {
  std::size_t k = 0;
  /// max - min + 1 of the witness.
  std::uint64_t n = 0;
  /// k integers in [1, n] starting at 1.
  IntSet witness;
  Provenance provenance;
};

struct Window {
  std::uint64_t n = 0;
  /// Residue in [0, M) of the first window element.
  std::uint64_t start = 0;
  /// The window projected to Z and translated to start at 1.
  IntSet witness;
};

/// Shortest circular window holding j consecutive residues; ties go to the
/// lexicographically least witness, then the smallest start.
/// Throws SizeExceedsSet (j > |set|) and InvalidArgument (j == 0).
Window min_window(const CyclicSet& set, std::size_t j);

struct SearchOptions {
  /// 0 uses std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Minimises min_window(d * set, j) over all units d. Ties are broken by
/// (n, witness, d). The witness is checked to be B_h in Z; a failure throws
/// VerificationFailed.
SearchResult best_affine_subset(const CyclicSet& set, std::size_t j, int h, const SearchOptions& options = {});

/// best_affine_subset for every j in [1, j_max] in one pass over the units.
std::vector<SearchResult> best_affine_subsets(const CyclicSet& set, std::size_t j_max, int h,
                                              const SearchOptions& options = {});

struct ScanOptions {
  SearchOptions search;
  BuildOptions build;
  /// Resumable log of completed (q, b, d-range) chunks.
  std::optional<std::filesystem::path> checkpoint;
  /// Number of consecutive d values per checkpoint line.
  std::uint64_t chunk = 4096;
  /// Called whenever the running best for some k improves.
  std::function<void(const SearchResult&)> on_improvement;
};

struct ScanError {
  std::uint64_t q = 0;
  std::string message;
};

struct TableScan {
  int h = 0;
  Family family = Family::bose;
  /// Best result for k = 1, 2, ... up to min(k_max, largest set size).
  std::vector<SearchResult> rows;
  std::vector<ScanError> errors;
};

/// For each k <= k_max, the best affine subset over every q in q_list and
/// every class representative b (fast Singer mode). Ties are broken by
/// (n, witness, q, b, d). Field errors are collected per q.
TableScan table_scan(int h, Family family, const std::vector<std::uint64_t>& q_list, std::size_t k_max,
                     const ScanOptions& options = {});

/// The greedy B_h sequence: first = start, then repeatedly the least larger
/// integer keeping the set B_h. Pass start = 0 for the 0-based variant.
IntSet greedy_bh(int h, std::size_t count, std::uint64_t start = 1);

struct ExactResult {
  int h = 0;
  std::size_t k = 0;
  /// Least max + 1 over k-element B_h sets with min 0; 0 when infeasible.
  std::uint64_t n = 0;
  /// Every optimal set with min 0, reflections included, sorted.
  std::vector<IntSet> witnesses;
  /// No set fits within the cap.
  bool infeasible = false;
};

/// Exhaustive search with iterative deepening on n. Throws CapTooSmall if
/// n_cap < k.
ExactResult brute_force_optimal(int h, std::size_t k, std::optional<std::uint64_t> n_cap = std::nullopt,
                                const SearchOptions& options = {});

/// {max - w : w in set}
IntSet reflect(const IntSet& set);

/// One witness per reflection pair (the lexicographically smaller), sorted.
std::vector<IntSet> up_to_reflection(const std::vector<IntSet>& witnesses);

}  // namespace bh
