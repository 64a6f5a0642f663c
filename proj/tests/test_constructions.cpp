#include <algorithm>
#include <map>
#include <random>

#include "bh/bh_core.hpp"
#include "bh/constructions.hpp"
#include "bh/error.hpp"
#include "bh/number_theory.hpp"
#include "doctest.h"

using namespace bh;

namespace {

using Elems = std::vector<std::uint64_t>;

// Independent route: schoolbook field arithmetic and a linear scan for logs.
std::vector<FieldElem> subfield_by_powers(const FieldCtx& ctx, const PrimePower& q) {
  std::vector<FieldElem> out{ctx.zero()};
  const auto step = ctx.group_order() / (q.q - 1);
  for (std::uint64_t k = 0; k + 1 < q.q; ++k) out.push_back(ctx.pow(ctx.generator(), k * step));
  return out;
}

std::uint64_t log_by_scan(const FieldCtx& ctx, const FieldElem& x) {
  FieldElem y = ctx.one();
  for (std::uint64_t a = 0;; ++a) {
    if (y == x) return a;
    y = ctx.mul(y, ctx.generator());
  }
}

Elems bose_oracle(const FieldCtx& ctx, const PrimePower& q, std::uint64_t b) {
  const auto beta = ctx.pow(ctx.generator(), b);
  Elems out;
  for (const auto& v : subfield_by_powers(ctx, q)) out.push_back(log_by_scan(ctx, ctx.add(beta, v)));
  return CyclicSet::from_residues(ctx.group_order(), out).elements;
}

Elems singer_oracle(const FieldCtx& ctx, const PrimePower& q, std::uint64_t b) {
  const auto beta = ctx.pow(ctx.generator(), b);
  const auto m = ctx.group_order() / (q.q - 1);
  const auto scalars = subfield_by_powers(ctx, q);
  Elems out;
  // reverse enumeration order on purpose
  for (auto u = scalars.rbegin(); u != scalars.rend(); ++u) {
    for (auto v = scalars.rbegin(); v != scalars.rend(); ++v) {
      const auto x = ctx.add(ctx.mul(*u, beta), *v);
      if (x.is_zero()) continue;
      const auto r = log_by_scan(ctx, x) % m;
      if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
    }
  }
  return CyclicSet::from_residues(m, out).elements;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected bh::Error");
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST_CASE("Bose_3(11, b) golden sets") {
  const auto q = PrimePower::from_q(11);
  const auto ctx = family_field(Family::bose, 3, q);
  const std::map<std::uint64_t, Elems> golden{
      {1, {1, 21, 65, 100, 111, 238, 324, 523, 535, 1137, 1214}},
      {2, {2, 16, 132, 237, 330, 338, 389, 419, 764, 1174, 1254}},
      {4, {4, 56, 116, 174, 354, 626, 782, 905, 979, 1147, 1183}},
      {6, {6, 152, 261, 295, 311, 352, 367, 891, 1092, 1113, 1228}},
  };
  for (const auto& [b, want] : golden) {
    const auto set = bose(ctx, 3, q, b);
    CHECK(set.modulus == 1330);
    CHECK(set.elements == want);
    CHECK(set.elements == bose_oracle(ctx, q, b));
    REQUIRE(set.meta);
    CHECK(set.meta->family == Family::bose);
  }
}

TEST_CASE("Singer_3(11, b) golden sets") {
  const auto q = PrimePower::from_q(11);
  const auto ctx = family_field(Family::singer, 3, q);
  const std::map<std::uint64_t, Elems> golden{
      {1, {1, 418, 502, 679, 846, 1050, 1164, 1187, 1285, 1319, 1339, 1464}},
      {2, {2, 273, 377, 432, 500, 665, 674, 887, 908, 1192, 1257, 1464}},
      {3, {3, 201, 309, 425, 664, 700, 876, 1061, 1105, 1239, 1357, 1464}},
      {6, {6, 76, 388, 593, 702, 734, 950, 1147, 1208, 1440, 1457, 1464}},
      {8, {8, 128, 582, 624, 739, 774, 841, 922, 1143, 1311, 1369, 1464}},
      {14, {14, 40, 85, 492, 529, 621, 683, 722, 940, 969, 1151, 1464}},
  };
  for (const auto& [b, want] : golden) {
    const auto set = singer(ctx, 3, q, b);
    CHECK(set.modulus == 1464);
    CHECK(set.elements == want);
  }
  CHECK(singer(ctx, 3, q, 2).elements == singer_oracle(ctx, q, 2));
}

TEST_CASE("smallest cases over F_2") {
  const auto q = PrimePower::from_q(2);
  CHECK(bose(2, q, 1).elements == Elems{1, 2});
  CHECK(bose(2, q, 1).modulus == 3);
  // F_8 = F_2[t]/(t^3 + t + 1): logs of t, t + 1, 1 are 1, 3, 0
  const auto s = singer(2, q, 1);
  CHECK(s.modulus == 7);
  CHECK(s.elements == Elems{1, 3, 7});
  const auto ctx = family_field(Family::bose, 2, q);
  CHECK(valid_b_values(ctx, Family::bose, 2, q) == Elems{1, 2});
}

TEST_CASE("valid b values for q = 11, h = 3") {
  const auto q = PrimePower::from_q(11);
  const auto bose_b = valid_b_values(family_field(Family::bose, 3, q), Family::bose, 3, q);
  CHECK(bose_b.size() == 132);
  CHECK(std::find(bose_b.begin(), bose_b.end(), 133) == bose_b.end());
  CHECK(valid_b_values(family_field(Family::singer, 3, q), Family::singer, 3, q).size() == 1452);
}

TEST_CASE("degree errors and unreduced b") {
  const auto q = PrimePower::from_q(11);
  const auto ctx = family_field(Family::bose, 3, q);
  CHECK(code_of([&] { bose(ctx, 3, q, 133); }) == ErrorCode::degree_too_low);
  CHECK(code_of([&] { bose(ctx, 3, q, 0); }) == ErrorCode::degree_too_low);
  CHECK(bose(ctx, 3, q, 1 + 1330) == bose(ctx, 3, q, 1));
  CHECK(code_of([&] { bose(ctx, 2, q, 1); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { bose(ctx, 1, q, 1); }) == ErrorCode::invalid_argument);

  const auto sctx = family_field(Family::singer, 3, q);
  CHECK(code_of([&] { singer(sctx, 3, q, 1464); }) == ErrorCode::degree_too_low);
  // 11^4 - 1 = 14640; 14640 / 120 = 122 lands in F_{121}
  CHECK(code_of([&] { singer(sctx, 3, q, 122); }) == ErrorCode::degree_too_low);
  CHECK(singer(sctx, 3, q, 1 + 14640) == singer(sctx, 3, q, 1));
}

TEST_CASE("cardinality and B_h for every valid b, small q") {
  for (int h : {2, 3}) {
    for (std::uint64_t qq : {2, 3, 4, 5}) {
      const auto q = PrimePower::from_q(qq);
      for (auto family : {Family::bose, Family::singer}) {
        const auto ctx = family_field(family, h, q);
        for (auto b : valid_b_values(ctx, family, h, q)) {
          const auto set = construct(ctx, family, h, q, b);
          REQUIRE(set.size() == (family == Family::bose ? qq : qq + 1));
          REQUIRE(is_bh_cyclic(set, h).ok);
        }
      }
    }
  }
}

TEST_CASE("non-prime q uses the subfield, not the prime field") {
  for (std::uint64_t qq : {4, 8, 9}) {
    const auto q = PrimePower::from_q(qq);
    const auto ctx = family_field(Family::bose, 2, q);
    for (auto b : valid_b_values(ctx, Family::bose, 2, q)) {
      REQUIRE(bose(ctx, 2, q, b).elements == bose_oracle(ctx, q, b));
    }
  }
  const auto q4 = PrimePower::from_q(4);
  const auto sctx = family_field(Family::singer, 2, q4);
  for (auto b : {1ULL, 2ULL, 3ULL, 5ULL}) {
    if (sctx.exponent_degree(b, q4) != 3) continue;
    CHECK(singer(sctx, 2, q4, b).elements == singer_oracle(sctx, q4, b));
  }
}

TEST_CASE("Singer residues fall into (q-1)-element fibres") {
  for (std::uint64_t qq : {3, 4, 5, 7}) {
    const auto q = PrimePower::from_q(qq);
    const auto ctx = family_field(Family::singer, 2, q);
    const auto m = ctx.group_order() / (qq - 1);
    const auto scalars = ctx.subfield_keys(q);
    for (auto b : valid_b_values(ctx, Family::singer, 2, q)) {
      std::map<std::uint64_t, unsigned> fibre;
      for (std::size_t u = 0; u < scalars.size(); ++u) {
        const auto ub = u == 0 ? FieldCtx::Key{0} : ctx.exp_key(b + ctx.dlog_key(scalars[u]));
        for (auto v : scalars) {
          const auto x = ctx.add_key(ub, v);
          if (x != 0) ++fibre[ctx.dlog_key(x) % m];
        }
      }
      REQUIRE(fibre.size() == qq + 1);
      for (const auto& [r, count] : fibre) REQUIRE(count == qq - 1);
    }
  }
}

TEST_CASE("changing the generator dilates the set") {
  // {a : tau^a = t^b + v} with tau = t^s equals s^{-1} * Bose(t, b)
  const auto q = PrimePower::from_q(5);
  const auto ctx = family_field(Family::bose, 3, q);
  const auto n = ctx.group_order();
  std::mt19937_64 rng(11);
  const auto units = units_mod(n);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = units[rng() % units.size()];
    const auto b = valid_b_values(ctx, Family::bose, 3, q)[rng() % 30];
    const auto base = bose(ctx, 3, q, b);
    Elems under_tau;
    for (auto a : base.elements) under_tau.push_back(mul_mod(a, *inverse_mod(s, n), n));
    // direct definition in terms of tau
    Elems direct;
    for (auto v : ctx.subfield_keys(q)) {
      const auto x = ctx.add_key(ctx.exp_key(b), v);
      direct.push_back(mul_mod(ctx.dlog_key(x), *inverse_mod(s, n), n));
    }
    CHECK(CyclicSet::from_residues(n, direct).elements == CyclicSet::from_residues(n, under_tau).elements);
    CHECK(affinely_equivalent(base, CyclicSet::from_residues(n, direct)));
  }
}
