#include "bh/search.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include "bh/bh_core.hpp"
#include "bh/constructions.hpp"
#include "bh/equivalence.hpp"
#include "bh/error.hpp"
#include "bh/number_theory.hpp"

namespace bh {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::affine_subset: return "affine_subset";
    case Method::greedy: return "greedy";
    case Method::exhaustive: return "exhaustive";
  }
  return "?";
}

namespace {

unsigned worker_count(const SearchOptions& options, std::size_t jobs) {
  unsigned t = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::clamp<std::size_t>(jobs, 1, t));
}

// Runs body(worker, index) for index in [0, jobs) on a small pool.
template <class Body>
void parallel_for(std::size_t jobs, unsigned workers, Body body) {
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs; ++i) body(0u, i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = next++; i < jobs; i = next++) body(w, i);
    });
  }
  for (auto& t : pool) t.join();
}

struct Candidate {
  std::uint64_t n = 0;  // 0 = none yet
  std::vector<std::uint64_t> witness;
  std::uint64_t d = 0;
  std::uint64_t start = 0;

  bool empty() const { return n == 0; }
};

bool better(const Candidate& a, const Candidate& b) {
  if (b.empty()) return !a.empty();
  if (a.empty()) return false;
  return std::tie(a.n, a.witness, a.d, a.start) < std::tie(b.n, b.witness, b.d, b.start);
}

std::vector<std::uint64_t> window_at(const std::vector<std::uint64_t>& x, std::uint64_t m, std::size_t i,
                                     std::size_t j) {
  const std::size_t k = x.size();
  std::vector<std::uint64_t> w(j);
  for (std::size_t t = 0; t < j; ++t) w[t] = (x[(i + t) % k] + m - x[i]) % m + 1;
  return w;
}

std::uint64_t span_at(const std::vector<std::uint64_t>& x, std::uint64_t m, std::size_t i, std::size_t j) {
  const std::size_t k = x.size();
  return (x[(i + j - 1) % k] + m - x[i]) % m + 1;
}

// Offers every shortest j-window of x (the residues of d * set) and, when
// with_reflection, the mirrored windows that belong to (m - d) * set.
void offer_windows(const std::vector<std::uint64_t>& x, std::uint64_t m, std::uint64_t d, std::size_t j,
                   bool with_reflection, Candidate& best) {
  const std::size_t k = x.size();
  std::uint64_t shortest = UINT64_MAX;
  for (std::size_t i = 0; i < k; ++i) shortest = std::min(shortest, span_at(x, m, i, j));
  if (!best.empty() && shortest > best.n) return;
  for (std::size_t i = 0; i < k; ++i) {
    if (span_at(x, m, i, j) != shortest) continue;
    Candidate c{shortest, window_at(x, m, i, j), d % m, x[i]};
    if (better(c, best)) best = c;
    if (!with_reflection) continue;
    Candidate r{shortest, {}, (m - d) % m, (m - x[(i + j - 1) % k]) % m};
    for (auto it = c.witness.rbegin(); it != c.witness.rend(); ++it) r.witness.push_back(shortest + 1 - *it);
    if (better(r, best)) best = std::move(r);
  }
}

// Best candidate per j in [1, j_max] over the given dilations; each d also
// covers m - d.
std::vector<Candidate> scan_dilations(const CyclicSet& set, const std::vector<std::uint64_t>& dilations,
                                      std::size_t j_max, const SearchOptions& options) {
  const std::uint64_t m = set.modulus;
  const unsigned workers = worker_count(options, dilations.size());
  std::vector<std::vector<Candidate>> local(workers, std::vector<Candidate>(j_max));
  parallel_for(dilations.size(), workers, [&](unsigned w, std::size_t idx) {
    const std::uint64_t d = dilations[idx];
    const auto x = dilate_zero_based(set, d);
    const bool mirrored = (m - d) % m != d % m;
    for (std::size_t j = 1; j <= j_max; ++j) offer_windows(x, m, d, j, mirrored, local[w][j - 1]);
  });
  std::vector<Candidate> out(j_max);
  for (const auto& worker : local) {
    for (std::size_t j = 0; j < j_max; ++j) {
      if (better(worker[j], out[j])) out[j] = worker[j];
    }
  }
  return out;
}

// Units d of Z/mZ with d <= m - d.
std::vector<std::uint64_t> half_units(std::uint64_t m, std::uint64_t lo = 1, std::uint64_t hi = UINT64_MAX) {
  std::vector<std::uint64_t> out;
  for (auto d : units_mod(m)) {
    if (d < lo || d > hi) continue;
    if (m > 2 && d > m - d) break;
    out.push_back(d);
  }
  return out;
}

SearchResult to_result(const CyclicSet& set, std::size_t j, int h, const Candidate& c) {
  SearchResult r;
  r.k = j;
  r.n = c.n;
  r.witness = IntSet{c.witness};
  r.provenance = Provenance{Method::affine_subset, set.meta, c.d, c.start};
  if (!is_bh_integer(r.witness, h)) {
    fail(ErrorCode::verification_failed, "window of size " + std::to_string(j) + " is not a B_" + std::to_string(h) +
                                             " set in Z");
  }
  return r;
}

void check_window_size(const CyclicSet& set, std::size_t j) {
  if (j == 0) fail(ErrorCode::invalid_argument, "window size must be positive");
  if (j > set.size()) {
    fail(ErrorCode::size_exceeds_set,
         "window of " + std::to_string(j) + " from a set of " + std::to_string(set.size()));
  }
}

}  // namespace

Window min_window(const CyclicSet& set, std::size_t j) {
  check_window_size(set, j);
  std::vector<std::uint64_t> x;
  for (auto a : set.elements) x.push_back(a % set.modulus);
  std::sort(x.begin(), x.end());
  Candidate best;
  offer_windows(x, set.modulus, 1, j, false, best);
  return Window{best.n, best.start, IntSet{best.witness}};
}

std::vector<SearchResult> best_affine_subsets(const CyclicSet& set, std::size_t j_max, int h,
                                              const SearchOptions& options) {
  check_window_size(set, j_max);
  const auto best = scan_dilations(set, half_units(set.modulus), j_max, options);
  std::vector<SearchResult> out;
  for (std::size_t j = 1; j <= j_max; ++j) out.push_back(to_result(set, j, h, best[j - 1]));
  return out;
}

SearchResult best_affine_subset(const CyclicSet& set, std::size_t j, int h, const SearchOptions& options) {
  check_window_size(set, j);
  return best_affine_subsets(set, j, h, options).back();
}

// ---------------------------------------------------------------------------
// table scan

namespace {

struct ChunkKey {
  std::uint64_t q, b, lo, hi;
  auto operator<=>(const ChunkKey&) const = default;
};

struct ChunkEntry {
  std::size_t k;
  std::uint64_t n, d, start;
};

std::string header_line(Family family, int h, std::size_t k_max) {
  return "bhsets-scan " + std::string(to_string(family)) + " h=" + std::to_string(h) + " k=" + std::to_string(k_max);
}

std::map<ChunkKey, std::vector<ChunkEntry>> read_checkpoint(const std::filesystem::path& path, Family family,
                                                            int h, std::size_t k_max) {
  std::map<ChunkKey, std::vector<ChunkEntry>> done;
  std::ifstream in(path);
  if (!in) return done;
  std::string line;
  if (!std::getline(in, line)) return done;
  if (line != header_line(family, h, k_max)) {
    fail(ErrorCode::invalid_argument, "checkpoint " + path.string() + " belongs to a different scan ('" + line + "')");
  }
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    ChunkKey key{};
    if (!(ss >> key.q >> key.b >> key.lo >> key.hi)) continue;  // torn final line
    std::vector<ChunkEntry> entries;
    std::string tok;
    bool ok = true;
    while (ss >> tok) {
      ChunkEntry e{};
      char c1 = 0, c2 = 0, c3 = 0;
      std::istringstream ts(tok);
      if (!(ts >> e.k >> c1 >> e.n >> c2 >> e.d >> c3 >> e.start) || c1 != ':' || c2 != ':' || c3 != ':') {
        ok = false;
        break;
      }
      entries.push_back(e);
    }
    if (ok) done[key] = std::move(entries);
  }
  return done;
}

Candidate rebuild(const CyclicSet& set, const ChunkEntry& e) {
  const std::uint64_t m = set.modulus;
  const auto x = dilate_zero_based(set, e.d);
  const auto it = std::lower_bound(x.begin(), x.end(), e.start);
  if (it == x.end() || *it != e.start || e.k == 0 || e.k > x.size()) {
    fail(ErrorCode::parse_error, "checkpoint entry does not match the constructed set");
  }
  Candidate c{e.n, window_at(x, m, static_cast<std::size_t>(it - x.begin()), e.k), e.d, e.start};
  if (c.witness.back() != e.n) fail(ErrorCode::parse_error, "checkpoint span disagrees with the constructed set");
  return c;
}

struct Row {
  Candidate c;
  std::uint64_t q = 0;
  std::uint64_t b = 0;
  CyclicSet source;
};

bool row_better(const Candidate& c, std::uint64_t q, std::uint64_t b, const Row& row) {
  if (row.c.empty()) return !c.empty();
  if (c.empty()) return false;
  return std::tie(c.n, c.witness, q, b, c.d, c.start) <
         std::tie(row.c.n, row.c.witness, row.q, row.b, row.c.d, row.c.start);
}

}  // namespace

TableScan table_scan(int h, Family family, const std::vector<std::uint64_t>& q_list, std::size_t k_max,
                     const ScanOptions& options) {
  if (h < 2) fail(ErrorCode::invalid_argument, "h must be >= 2");
  if (k_max == 0) fail(ErrorCode::invalid_argument, "k must be positive");
  if (options.chunk == 0) fail(ErrorCode::invalid_argument, "chunk must be positive");
  TableScan scan;
  scan.h = h;
  scan.family = family;

  std::map<ChunkKey, std::vector<ChunkEntry>> done;
  std::ofstream log;
  if (options.checkpoint) {
    done = read_checkpoint(*options.checkpoint, family, h, k_max);
    const bool fresh = !std::filesystem::exists(*options.checkpoint) || std::filesystem::file_size(*options.checkpoint) == 0;
    log.open(*options.checkpoint, std::ios::app);
    if (!log) fail(ErrorCode::io_error, "cannot write checkpoint " + options.checkpoint->string());
    if (fresh) log << header_line(family, h, k_max) << '\n' << std::flush;
  }

  std::vector<Row> rows(k_max);
  std::vector<std::uint64_t> qs = q_list;
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());

  for (auto qq : qs) {
    try {
      const auto q = PrimePower::from_q(qq);
      const auto ctx = family_field(family, h, q, options.build);
      const auto cls = classify(ctx, family, h, q, SingerMode::fast);
      for (auto b : cls.representatives()) {
        const auto set = construct(ctx, family, h, q, b);
        const std::size_t j_max = std::min(k_max, set.size());
        const std::uint64_t m = set.modulus;
        const std::uint64_t d_end = m > 2 ? m / 2 : 1;
        for (std::uint64_t lo = 1; lo <= d_end; lo += options.chunk) {
          const std::uint64_t hi = std::min(d_end, lo + options.chunk - 1);
          const ChunkKey key{qq, b, lo, hi};
          std::vector<Candidate> best(j_max);
          if (auto it = done.find(key); it != done.end() && it->second.size() == j_max) {
            for (const auto& e : it->second) {
              if (e.k >= 1 && e.k <= j_max) best[e.k - 1] = rebuild(set, e);
            }
          } else {
            best = scan_dilations(set, half_units(m, lo, hi), j_max, options.search);
            if (log.is_open()) {
              log << qq << ' ' << b << ' ' << lo << ' ' << hi;
              for (std::size_t j = 0; j < j_max; ++j) {
                if (!best[j].empty()) log << ' ' << j + 1 << ':' << best[j].n << ':' << best[j].d << ':' << best[j].start;
              }
              log << '\n' << std::flush;
            }
          }
          for (std::size_t j = 0; j < j_max; ++j) {
            if (!row_better(best[j], qq, b, rows[j])) continue;
            rows[j] = Row{best[j], qq, b, set};
            if (options.on_improvement) options.on_improvement(to_result(set, j + 1, h, best[j]));
          }
        }
      }
    } catch (const Error& e) {
      scan.errors.push_back(ScanError{qq, e.what()});
    }
  }

  for (std::size_t j = 0; j < k_max; ++j) {
    if (rows[j].c.empty()) break;
    scan.rows.push_back(to_result(rows[j].source, j + 1, h, rows[j].c));
  }
  return scan;
}

// ---------------------------------------------------------------------------
// greedy

IntSet greedy_bh(int h, std::size_t count, std::uint64_t start) {
  if (h < 2) fail(ErrorCode::invalid_argument, "h must be >= 2");
  const auto hh = static_cast<std::size_t>(h);
  std::vector<std::uint64_t> seq;
  // sums[j][s] is set when s is a sum of j elements (with repetition)
  std::vector<std::vector<char>> sums(hh + 1);
  for (std::uint64_t x = start; seq.size() < count; ++x) {
    const std::size_t cap = hh * x + 1;
    for (auto& s : sums) s.resize(cap, 0);
    if (seq.empty()) {
      for (auto& s : sums) std::fill(s.begin(), s.end(), 0);
      for (std::size_t j = 0; j <= hh; ++j) sums[j][j * x] = 1;
      seq.push_back(x);
      continue;
    }
    // x is admissible unless m*x + s1 = s2 with s1 a sum of L-m terms and s2 of L terms
    bool ok = true;
    for (std::size_t m = 1; m <= hh && ok; ++m) {
      for (std::size_t len = m; len <= hh && ok; ++len) {
        const auto& lower = sums[len - m];
        const auto& upper = sums[len];
        for (std::size_t s1 = 0; s1 + m * x < upper.size() && s1 < lower.size(); ++s1) {
          if (lower[s1] && upper[s1 + m * x]) {
            ok = false;
            break;
          }
        }
      }
    }
    if (!ok) continue;
    for (std::size_t j = hh; j >= 1; --j) {
      for (std::size_t m = 1; m <= j; ++m) {
        const auto& lower = sums[j - m];
        for (std::size_t s = 0; s + m * x < cap; ++s) {
          if (lower[s]) sums[j][s + m * x] = 1;
        }
      }
    }
    seq.push_back(x);
  }
  return IntSet{seq};
}

// ---------------------------------------------------------------------------
// exhaustive

namespace {

// j-fold sum sets for j = 0..h packed into words; one frame per DFS depth.
class SumFrames {
 public:
  SumFrames(std::size_t h, std::uint64_t max_elem, std::size_t depths)
      : h_(h), words_((h * max_elem + 1 + 63) / 64), data_(depths * (h + 1) * words_, 0) {}

  std::uint64_t* at(std::size_t depth, std::size_t j) { return data_.data() + (depth * (h_ + 1) + j) * words_; }

  void init_zero(std::size_t depth) {
    for (std::size_t j = 0; j <= h_; ++j) {
      auto* w = at(depth, j);
      std::fill(w, w + words_, 0);
      w[0] = 1;
    }
  }

  // Adds x to the set at depth, writing depth+1; false on a sum collision.
  bool push(std::size_t depth, std::uint64_t x) {
    for (std::size_t m = 1; m <= h_; ++m) {
      for (std::size_t len = m; len <= h_; ++len) {
        if (shifted_meets(at(depth, len - m), m * x, at(depth, len))) return false;
      }
    }
    for (std::size_t j = 0; j <= h_; ++j) {
      auto* dst = at(depth + 1, j);
      std::copy(at(depth, j), at(depth, j) + words_, dst);
      for (std::size_t m = 1; m <= j; ++m) shifted_or(at(depth, j - m), m * x, dst);
    }
    return true;
  }

 private:
  bool shifted_meets(const std::uint64_t* src, std::uint64_t shift, const std::uint64_t* dst) const {
    const std::size_t ws = shift / 64, bs = shift % 64;
    for (std::size_t i = ws; i < words_; ++i) {
      std::uint64_t v = src[i - ws] << bs;
      if (bs != 0 && i > ws) v |= src[i - ws - 1] >> (64 - bs);
      if (v & dst[i]) return true;
    }
    return false;
  }

  void shifted_or(const std::uint64_t* src, std::uint64_t shift, std::uint64_t* dst) const {
    const std::size_t ws = shift / 64, bs = shift % 64;
    for (std::size_t i = ws; i < words_; ++i) {
      std::uint64_t v = src[i - ws] << bs;
      if (bs != 0 && i > ws) v |= src[i - ws - 1] >> (64 - bs);
      dst[i] |= v;
    }
  }

  std::size_t h_;
  std::size_t words_;
  std::vector<std::uint64_t> data_;
};

struct Exhaustive {
  std::size_t h, k;
  std::uint64_t n;
  const std::vector<std::uint64_t>& best;  // best[i] = optimum for i elements, i < k

  // Positions a_1..a_{k-2} in increasing order; a_0 = 0 and a_{k-1} = n-1 are fixed.
  void dfs(SumFrames& f, std::vector<std::uint64_t>& chosen, std::size_t i, std::vector<IntSet>& found) const {
    if (i == k - 1) {
      auto w = chosen;
      w.push_back(n - 1);
      found.push_back(IntSet{std::move(w)});
      return;
    }
    const std::uint64_t lo = std::max(chosen.back() + 1, best[i + 1] - 1);
    const std::uint64_t hi = n - best[k - i];
    for (std::uint64_t x = lo; x <= hi; ++x) {
      if (!f.push(i, x)) continue;
      chosen.push_back(x);
      dfs(f, chosen, i + 1, found);
      chosen.pop_back();
    }
  }

  // Every optimal-span set for this n, or none.
  std::vector<IntSet> run(unsigned workers) const {
    std::vector<IntSet> found;
    if (k == 1) return {IntSet{{0}}};
    SumFrames root(h, n - 1, 2);
    root.init_zero(0);
    // depth 0 holds {0}; depth 1 holds {0, n-1}
    if (!root.push(0, n - 1)) return found;
    if (k == 2) return {IntSet{{0, n - 1}}};

    const std::uint64_t lo = std::max<std::uint64_t>(1, best[2] - 1);
    const std::uint64_t hi = n - best[k - 1];
    if (hi < lo) return found;
    const std::size_t jobs = hi - lo + 1;
    std::vector<std::vector<IntSet>> local(workers);
    std::vector<SumFrames> frames;
    for (unsigned w = 0; w < workers; ++w) frames.emplace_back(h, n - 1, k);
    parallel_for(jobs, workers, [&](unsigned w, std::size_t idx) {
      auto& f = frames[w];
      // copy the {0, n-1} frame into depth 1 of this worker
      f.init_zero(0);
      if (!f.push(0, n - 1)) return;
      const std::uint64_t x = lo + idx;
      if (!f.push(1, x)) return;
      std::vector<std::uint64_t> chosen{0, x};
      dfs(f, chosen, 2, local[w]);
    });
    for (auto& l : local) found.insert(found.end(), l.begin(), l.end());
    return found;
  }
};

}  // namespace

IntSet reflect(const IntSet& set) {
  if (set.elements.empty()) return set;
  const auto top = set.elements.back();
  std::vector<std::uint64_t> out;
  for (auto it = set.elements.rbegin(); it != set.elements.rend(); ++it) out.push_back(top - *it + set.elements.front());
  return IntSet{out};
}

std::vector<IntSet> up_to_reflection(const std::vector<IntSet>& witnesses) {
  std::vector<IntSet> out;
  for (const auto& w : witnesses) out.push_back(std::min(w, reflect(w)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ExactResult brute_force_optimal(int h, std::size_t k, std::optional<std::uint64_t> n_cap,
                                const SearchOptions& options) {
  if (h < 2) fail(ErrorCode::invalid_argument, "h must be >= 2");
  if (k == 0) fail(ErrorCode::invalid_argument, "k must be positive");
  if (n_cap && *n_cap < k) {
    fail(ErrorCode::cap_too_small, "cap " + std::to_string(*n_cap) + " is below k = " + std::to_string(k));
  }
  const auto hh = static_cast<std::size_t>(h);
  ExactResult result;
  result.h = h;
  result.k = k;

  // best[i] = optimal n for i elements; best[0] = 0 by convention
  std::vector<std::uint64_t> best{0};
  for (std::size_t i = 1; i <= k; ++i) {
    // C(i+h-1, h) distinct sums must fit in [0, h(n-1)]
    std::uint64_t multisets = 1;
    for (std::size_t t = 1; t <= hh; ++t) multisets = multisets * (i + t - 1) / t;
    std::uint64_t n = std::max<std::uint64_t>(best.back() + 1, (multisets - 1 + hh - 1) / hh + 1);
    for (;; ++n) {
      if (n_cap && n > *n_cap) {
        result.infeasible = true;
        return result;
      }
      Exhaustive ex{hh, i, n, best};
      auto found = ex.run(worker_count(options, n));
      if (found.empty()) continue;
      best.push_back(n);
      if (i == k) {
        std::sort(found.begin(), found.end());
        for (const auto& w : found) {
          if (!is_bh_integer(w, h)) fail(ErrorCode::verification_failed, "exhaustive witness is not B_h");
        }
        result.n = n;
        result.witnesses = std::move(found);
      }
      break;
    }
  }
  return result;
}

}  // namespace bh
