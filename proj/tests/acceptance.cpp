// One line per acceptance criterion. Pass --expensive to add the k = 8
// exhaustive search.

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "bh/bh_core.hpp"
#include "bh/bounds.hpp"
#include "bh/constructions.hpp"
#include "bh/equivalence.hpp"
#include "bh/number_theory.hpp"
#include "bh/search.hpp"

using namespace bh;
using Elems = std::vector<std::uint64_t>;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail.clear();
    pass = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string str(const Elems& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

Outcome golden_construction() {
  Outcome o;
  const auto q = PrimePower::from_q(11);
  const std::map<std::uint64_t, Elems> bose_sets{
      {1, {1, 21, 65, 100, 111, 238, 324, 523, 535, 1137, 1214}},
      {2, {2, 16, 132, 237, 330, 338, 389, 419, 764, 1174, 1254}},
      {4, {4, 56, 116, 174, 354, 626, 782, 905, 979, 1147, 1183}},
      {6, {6, 152, 261, 295, 311, 352, 367, 891, 1092, 1113, 1228}},
  };
  const std::map<std::uint64_t, Elems> singer_sets{
      {1, {1, 418, 502, 679, 846, 1050, 1164, 1187, 1285, 1319, 1339, 1464}},
      {2, {2, 273, 377, 432, 500, 665, 674, 887, 908, 1192, 1257, 1464}},
      {3, {3, 201, 309, 425, 664, 700, 876, 1061, 1105, 1239, 1357, 1464}},
      {6, {6, 76, 388, 593, 702, 734, 950, 1147, 1208, 1440, 1457, 1464}},
      {8, {8, 128, 582, 624, 739, 774, 841, 922, 1143, 1311, 1369, 1464}},
      {14, {14, 40, 85, 492, 529, 621, 683, 722, 940, 969, 1151, 1464}},
  };
  int matched = 0;
  for (const auto& [b, want] : bose_sets) {
    const auto got = bose(3, q, b);
    o.require(got.modulus == 1330 && got.elements == want, "Bose b=" + std::to_string(b) + " got " + str(got.elements));
    matched += got.elements == want;
  }
  for (const auto& [b, want] : singer_sets) {
    const auto got = singer(3, q, b);
    o.require(got.modulus == 1464 && got.elements == want,
              "Singer b=" + std::to_string(b) + " got " + str(got.elements));
    matched += got.elements == want;
  }
  if (o.pass) o.detail = std::to_string(matched) + "/10 sets bit-exact";
  return o;
}

Outcome cardinality_suite() {
  Outcome o;
  std::size_t sets = 0;
  for (int h : {2, 3, 4}) {
    for (std::uint64_t qq : {2, 3, 4, 5, 7, 8, 9}) {
      const auto q = PrimePower::from_q(qq);
      for (auto family : {Family::bose, Family::singer}) {
        const auto ctx = family_field(family, h, q);
        const std::size_t want = family == Family::bose ? qq : qq + 1;
        for (auto b : valid_b_values(ctx, family, h, q)) {
          const auto set = construct(ctx, family, h, q, b);
          ++sets;
          o.require(set.size() == want, std::string(to_string(family)) + " h=" + std::to_string(h) + " q=" +
                                            std::to_string(qq) + " b=" + std::to_string(b) + " has wrong size");
          o.require(is_bh_cyclic(set, h).ok, std::string(to_string(family)) + " h=" + std::to_string(h) + " q=" +
                                                 std::to_string(qq) + " b=" + std::to_string(b) + " is not B_h");
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(sets) + " sets, all of size q / q+1 and B_h";
  return o;
}

Outcome equivalence_funnel() {
  Outcome o;
  const auto q = PrimePower::from_q(11);
  const auto bctx = family_field(Family::bose, 3, q);
  const auto bcls = bose_b_classes(bctx, 3, q);
  o.require(bcls.classes.size() == 4, "Bose(3,11) gave " + std::to_string(bcls.classes.size()) + " classes");
  const auto bcert = certify_inequivalence(bctx, bcls);
  o.require(bcert.all_inequivalent(), "Bose representatives not pairwise inequivalent");

  const auto sctx = family_field(Family::singer, 3, q);
  const auto scls = singer_b_classes(sctx, 3, q, SingerMode::fast);
  std::vector<std::size_t> f;
  for (const auto& s : scls.counts_after_stage) f.push_back(s.classes);
  const bool shape = f.size() == 4 && f[0] == 1452 && f[1] == 366 && f[2] <= 36 && f[3] == 6;
  std::string funnel;
  for (std::size_t i = 0; i < f.size(); ++i) funnel += (i ? "->" : "") + std::to_string(f[i]);
  o.require(shape, "Singer funnel " + funnel);
  const auto scert = certify_inequivalence(sctx, scls);
  o.require(scert.all_inequivalent(), "Singer representatives not pairwise inequivalent");
  if (o.pass) {
    o.detail = "Bose(3,11) 4 classes; Singer(3,11) funnel " + funnel + "; " +
               std::to_string(bcert.pairs_checked + scert.pairs_checked) + " representative pairs inequivalent";
  }
  return o;
}

Outcome sidon_collapse() {
  Outcome o;
  for (std::uint64_t qq : {3, 4, 5, 7, 8, 9}) {
    const auto q = PrimePower::from_q(qq);
    const auto n = bose_b_classes(family_field(Family::bose, 2, q), 2, q).classes.size();
    o.require(n == 1, "q=" + std::to_string(qq) + " gave " + std::to_string(n) + " classes");
  }
  if (o.pass) o.detail = "one class for q in {3,4,5,7,8,9}";
  return o;
}

Outcome diameter_search() {
  Outcome o;
  struct Want {
    Family family;
    int h;
    std::uint64_t q_max;
    std::size_t k;
    std::uint64_t n;
    std::uint64_t q;  // 0: not checked
  };
  const Want wants[] = {
      {Family::bose, 3, 11, 11, 594, 11},   {Family::bose, 3, 11, 7, 122, 7},
      {Family::singer, 3, 11, 11, 592, 11}, {Family::singer, 3, 11, 12, 738, 11},
      {Family::singer, 3, 11, 10, 365, 9},  {Family::singer, 4, 7, 8, 693, 7},
  };
  std::map<std::tuple<Family, int, std::uint64_t>, TableScan> scans;
  std::string found;
  for (const auto& w : wants) {
    const auto key = std::tuple{w.family, w.h, w.q_max};
    if (!scans.count(key)) {
      std::vector<std::uint64_t> qs;
      for (std::uint64_t q = 2; q <= w.q_max; ++q) {
        if (as_prime_power(q)) qs.push_back(q);
      }
      scans[key] = table_scan(w.h, w.family, qs, 12);
    }
    const auto& scan = scans[key];
    const std::string label = std::string(to_string(w.family)) + " h=" + std::to_string(w.h) + " k=" +
                              std::to_string(w.k);
    if (scan.rows.size() < w.k) {
      o.require(false, label + " missing");
      continue;
    }
    const auto& row = scan.rows[w.k - 1];
    const auto q = row.provenance.params ? row.provenance.params->q.q : 0;
    o.require(row.n == w.n && q == w.q && is_bh_integer(row.witness, w.h),
              label + " got " + std::to_string(row.n) + " @ q=" + std::to_string(q));
    found += (found.empty() ? "" : ", ") + label + ": " + std::to_string(row.n) + " @ q=" + std::to_string(q);
  }
  if (o.pass) o.detail = found;
  return o;
}

Outcome exhaustive_optima(bool expensive) {
  Outcome o;
  const std::vector<std::pair<std::uint64_t, std::vector<Elems>>> table{
      {1, {{0}}},
      {2, {{0, 1}}},
      {5, {{0, 1, 4}}},
      {12, {{0, 1, 7, 11}, {0, 1, 8, 11}}},
      {24, {{0, 1, 15, 18, 23}, {0, 1, 15, 20, 23}}},
      {46, {{0, 2, 11, 26, 42, 45}}},
      {83, {{0, 1, 7, 50, 59, 78, 82}, {0, 2, 23, 45, 72, 79, 82}, {0, 4, 23, 32, 75, 76, 82}}},
      {130, {{0, 2, 5, 34, 74, 107, 120, 129}}},
  };
  const std::size_t k_max = expensive ? 8 : 7;
  std::string values;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const auto r = brute_force_optimal(3, k);
    std::vector<Elems> got;
    for (const auto& w : up_to_reflection(r.witnesses)) got.push_back(w.elements);
    const auto& [n, wits] = table[k - 1];
    o.require(r.n == n && got == wits, "k=" + std::to_string(k) + " got n=" + std::to_string(r.n) + " with " +
                                           std::to_string(got.size()) + " witnesses");
    values += (values.empty() ? "" : ",") + std::to_string(r.n);
  }
  if (o.pass) {
    o.detail = "k<=" + std::to_string(k_max) + ": " + values + " with the tabulated witnesses";
    if (!expensive) o.detail += " (k=8 needs --expensive)";
  }
  return o;
}

Outcome greedy_sequences() {
  Outcome o;
  const Elems g3{1, 2, 5, 14, 33, 72, 125, 219, 376, 573};
  const Elems g4{1, 2, 6, 22, 56, 154, 369, 857, 1425, 2604};
  const auto a = greedy_bh(3, 10), b = greedy_bh(4, 10);
  o.require(a.elements == g3, "h=3 got " + str(a.elements));
  o.require(b.elements == g4, "h=4 got " + str(b.elements));
  if (o.pass) o.detail = "h=3 and h=4, 10 terms each";
  return o;
}

using Dec = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<80>>;

Outcome bounds_sanity() {
  Outcome o;
  std::size_t beaten = 0;
  for (int h = 2; h <= 5; ++h) {
    for (std::uint64_t k = 4; k <= 200; ++k) {
      const auto c = constructive_bound(h, k);
      const auto f = inverse_bound(h, std::to_string(k), Regime::unconditional);
      const bool ok = value_exceeds(f, std::stoull(c.value));
      beaten += ok;
      o.require(ok, "h=" + std::to_string(h) + " k=" + std::to_string(k));
    }
  }
  std::size_t sampled = 0;
  for (int h = 2; h <= 5; ++h) {
    for (unsigned long k : {4ul, 10ul, 57ul, 1000ul, 123456ul}) {
      const Dec kk(k);
      const Dec lg = log(Dec(20) * kk);
      const Dec want = pow(kk, h) + lg * pow(kk, Dec(h) - Dec(1) / 2) + 2 * pow(kk, h - 1) * pow(lg, 2 * h);
      const Dec got(inverse_bound(h, std::to_string(k), Regime::rh).value);
      const bool ok = abs(got - want) / want < Dec("1e-30");
      ++sampled;
      o.require(ok, "RH h=" + std::to_string(h) + " k=" + std::to_string(k));
    }
  }
  if (o.pass) {
    o.detail = "constructive < unconditional at " + std::to_string(beaten) + " (h,k); RH matches to 30 digits at " +
               std::to_string(sampled) + " samples";
  }
  return o;
}

Outcome property_suites() {
  Outcome o;
  std::mt19937_64 rng(20240611);
  constexpr int kCases = 1000;

  // dlog round trip
  {
    const auto ctx = build_field(3, 7);
    int bad = 0;
    for (int i = 0; i < kCases; ++i) {
      const auto a = rng() % ctx.group_order();
      bad += ctx.dlog(ctx.exp(a)) != a;
      std::vector<std::uint32_t> c(ctx.degree());
      for (auto& x : c) x = static_cast<std::uint32_t>(rng() % 3);
      const auto e = ctx.element(c);
      if (!e.is_zero()) bad += ctx.exp(ctx.dlog(e)) != e;
    }
    o.require(bad == 0, "dlog round trip: " + std::to_string(bad) + " failures");
  }
  // Frobenius additivity
  {
    const auto ctx = build_field(5, 4);
    int bad = 0;
    for (int i = 0; i < kCases; ++i) {
      const auto a = ctx.exp(rng()), b = ctx.exp(rng());
      bad += ctx.pow(ctx.add(a, b), 5) != ctx.add(ctx.pow(a, 5), ctx.pow(b, 5));
    }
    o.require(bad == 0, "Frobenius additivity: " + std::to_string(bad) + " failures");
  }
  // affine closure of B_h and canonical form constancy
  {
    std::vector<std::pair<CyclicSet, int>> bases;
    for (std::uint64_t qq : {4, 5, 7}) {
      const auto q = PrimePower::from_q(qq);
      for (auto family : {Family::bose, Family::singer}) {
        const auto ctx = family_field(family, 3, q);
        const auto bs = valid_b_values(ctx, family, 3, q);
        for (int i = 0; i < 3; ++i) bases.emplace_back(construct(ctx, family, 3, q, bs[rng() % bs.size()]), 3);
      }
    }
    int closure_bad = 0, canon_bad = 0;
    for (int i = 0; i < kCases; ++i) {
      const auto& [set, h] = bases[rng() % bases.size()];
      const auto units = units_mod(set.modulus);
      const AffineMap map{units[rng() % units.size()], rng() % set.modulus, set.modulus};
      const auto image = apply_affine(set, map);
      closure_bad += !is_bh_cyclic(image, h).ok;
      if (i % 4 == 0 || i < 250) canon_bad += canonical_form(image) != canonical_form(set);
    }
    o.require(closure_bad == 0, "affine closure: " + std::to_string(closure_bad) + " failures");
    o.require(canon_bad == 0, "canonical form: " + std::to_string(canon_bad) + " failures");
  }
  // canonical form on random small sets, so the orbit check also covers non-B_h sets
  {
    int bad = 0;
    for (int i = 0; i < kCases; ++i) {
      const std::uint64_t m = 5 + rng() % 80;
      const std::size_t k = 1 + rng() % 6;
      Elems r;
      for (std::size_t t = 0; t < k; ++t) r.push_back(rng() % m);
      std::sort(r.begin(), r.end());
      r.erase(std::unique(r.begin(), r.end()), r.end());
      const auto set = CyclicSet::from_residues(m, r);
      const auto units = units_mod(m);
      const auto image = apply_affine(set, AffineMap{units[rng() % units.size()], rng() % m, m});
      bad += canonical_form(image) != canonical_form(set);
    }
    o.require(bad == 0, "canonical form on random sets: " + std::to_string(bad) + " failures");
  }
  // min_window translation invariance
  {
    int bad = 0;
    for (int i = 0; i < kCases; ++i) {
      const std::uint64_t m = 3 + rng() % 500;
      const std::size_t k = 1 + rng() % std::min<std::uint64_t>(m, 12);
      Elems pool(m);
      for (std::uint64_t t = 0; t < m; ++t) pool[t] = t;
      std::shuffle(pool.begin(), pool.end(), rng);
      pool.resize(k);
      const auto set = CyclicSet::from_residues(m, pool);
      const auto shifted = apply_affine(set, AffineMap{1, rng() % m, m});
      const std::size_t j = 1 + rng() % k;
      const auto a = min_window(set, j), b = min_window(shifted, j);
      bad += a.n != b.n || a.witness != b.witness;
    }
    o.require(bad == 0, "min_window translation: " + std::to_string(bad) + " failures");
  }
  if (o.pass) o.detail = "5 suites x " + std::to_string(kCases) + " random cases, zero failures";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  bool expensive = false;
  for (int i = 1; i < argc; ++i) expensive |= std::strcmp(argv[i], "--expensive") == 0;

  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "golden construction", 10, golden_construction},
      {2, "cardinality and B_h suite", 120, cardinality_suite},
      {3, "equivalence funnel", 300, equivalence_funnel},
      {4, "h=2 collapse", 60, sidon_collapse},
      {5, "diameter search", 600, diameter_search},
      {6, "exhaustive optima", expensive ? 3600.0 : 1800.0, [=] { return exhaustive_optima(expensive); }},
      {7, "greedy sequences", 60, greedy_sequences},
      {8, "bounds sanity", 10, bounds_sanity},
      {9, "property suites", 600, property_suites},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && secs > c.limit_s) {
      o.pass = false;
      o.detail += "; over time limit";
    }
    failed += !o.pass;
    std::printf("criterion %d %s: %s (%s; %.2f s)\n", c.id, c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
  }
  return failed == 0 ? 0 : 1;
}
