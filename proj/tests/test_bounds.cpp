#include <boost/multiprecision/cpp_dec_float.hpp>

#include <string>

#include "bh/bounds.hpp"
#include "bh/error.hpp"
#include "bh/number_theory.hpp"
#include "doctest.h"

using namespace bh;
using Dec = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<80>>;

namespace {

Dec dec(const std::string& s) { return Dec(s); }

bool close(const Dec& a, const Dec& b, int digits) {
  const Dec rel = abs(a - b) / abs(b);
  return rel < pow(Dec(10), -digits);
}

// Independent evaluation of the RH formulas in decimal floating point.
Dec rh_inverse_oracle(int h, unsigned long k) {
  const Dec kk(k);
  const Dec lg = log(Dec(20) * kk);
  return pow(kk, h) + lg * pow(kk, Dec(h) - Dec(1) / 2) + 2 * pow(kk, h - 1) * pow(lg, 2 * h);
}

Dec rh_density_oracle(int h, unsigned long long n) {
  const Dec nn(n);
  return pow(nn, Dec(1) / h) - (7 + log(nn) / h) * pow(nn, Dec(1) / (2 * h));
}

// values from mpmath at 60 digits
struct Frozen {
  Regime regime;
  Quantity quantity;
  int h;
  const char* arg;
  const char* value;
};

const Frozen kFrozen[] = {
    {Regime::rh, Quantity::inverse, 3, "10", "4427110.36330630770400138439005641039077124248"},
    {Regime::rh, Quantity::inverse, 2, "1000", "20552182.032891570015587157563888802102974006"},
    {Regime::rh, Quantity::inverse, 4, "57", "2231718486765.72995663527922952995008867488433"},
    {Regime::rh, Quantity::inverse, 5, "123456789", "1.04011371540178921178585139990609548771824103e+46"},
    {Regime::rh, Quantity::density, 2, "1000000000000", "979184.489442035725895892051271893814754393391"},
    {Regime::rh, Quantity::density, 3, "1000000000000000000000000000000", "9996997414.9070059543159820085453156357923989"},
    {Regime::unconditional, Quantity::inverse, 3, "10", "7.16031010858956366612340019153239984162360484e+224"},
    {Regime::bhp, Quantity::inverse, 2, "1000000", "1005650150178.49101720862243145572096371915886"},
    {Regime::large_k, Quantity::inverse, 3, "100", "5033264.271901448237872733812634721524050075"},
    {Regime::bhp, Quantity::density, 3, "10000000000000000000000000000000000000000", "21544336900318.8372175929356651935049525934494"},
};

}  // namespace

TEST_CASE("formula values match frozen high-precision evaluations") {
  for (const auto& f : kFrozen) {
    const auto r = f.quantity == Quantity::inverse ? inverse_bound(f.h, f.arg, f.regime)
                                                   : density_bound(f.h, f.arg, f.regime);
    INFO(to_string(f.regime) << " h=" << f.h << " arg=" << f.arg << " got " << r.value);
    CHECK(close(dec(r.value), dec(f.value), 35));
    // directed rounding: never on the wrong side of the true value
    const Dec slack = abs(dec(f.value)) * pow(Dec(10), -44);
    if (f.quantity == Quantity::inverse) {
      CHECK(dec(r.value) >= dec(f.value) - slack);
    } else {
      CHECK(dec(r.value) <= dec(f.value) + slack);
    }
  }
}

TEST_CASE("RH formulas agree with a decimal oracle to 30 digits") {
  for (int h = 2; h <= 5; ++h) {
    for (unsigned long k : {4ul, 7ul, 10ul, 33ul, 100ul, 999ul, 123457ul}) {
      const auto r = inverse_bound(h, std::to_string(k), Regime::rh);
      CHECK_MESSAGE(close(dec(r.value), rh_inverse_oracle(h, k), 30), "h=" << h << " k=" << k);
    }
    for (unsigned long long n : {100000ull, 10000000000ull, 1000000000000000000ull}) {
      const auto r = density_bound(h, std::to_string(n), Regime::rh);
      CHECK_MESSAGE(close(dec(r.raw_value), rh_density_oracle(h, n), 30), "h=" << h << " n=" << n);
    }
  }
}

TEST_CASE("report metadata") {
  const auto rh = inverse_bound(3, "10", Regime::rh);
  CHECK(rh.hypotheses == "Assuming the Riemann Hypothesis");
  CHECK(rh.relation == "<");
  CHECK(rh.precision_bits >= 128);
  CHECK(inverse_bound(2, "10", Regime::bhp).hypotheses == "sufficiently large");
  CHECK(inverse_bound(2, "10", Regime::large_k).hypotheses == "k > e^{e^{34}}");
  CHECK(density_bound(2, "10", Regime::large_k).relation == ">");

  const auto pair = conditional_bounds(3, "10", "1000", Regime::rh);
  CHECK(pair.inverse.quantity == Quantity::inverse);
  CHECK(pair.density.quantity == Quantity::density);
  CHECK_THROWS_AS(conditional_bounds(3, "10", "1000", Regime::unconditional), Error);
  CHECK(parse_regime("bhp") == Regime::bhp);
  CHECK(parse_regime("Large-K") == Regime::large_k);
  CHECK_THROWS_AS(parse_regime("cramer"), Error);
}

TEST_CASE("vacuous lower bounds clamp to zero") {
  const auto u = density_bound(3, "1000000", Regime::unconditional);
  CHECK(u.vacuous);
  CHECK(u.value == "0");
  CHECK(u.raw_value[0] == '-');

  // n ~ e^9: e^3 - 7 e^2 < 0
  const auto lk = density_bound(3, "8103", Regime::large_k);
  CHECK(lk.vacuous);

  const auto fine = density_bound(2, "1000000000000", Regime::rh);
  CHECK_FALSE(fine.vacuous);
  CHECK(fine.value == fine.raw_value);
}

TEST_CASE("unconditional bound is increasing in k") {
  for (int h = 2; h <= 3; ++h) {
    Dec prev = 0;
    for (unsigned k = 4; k <= 100; ++k) {
      const Dec v = dec(inverse_bound(h, std::to_string(k), Regime::unconditional).value);
      CHECK(v > prev);
      CHECK(v > pow(Dec(k), h));
      prev = v;
    }
  }
}

TEST_CASE("evaluation is reproducible") {
  const auto a = inverse_bound(4, "987654321987654321987654321", Regime::rh);
  const auto b = inverse_bound(4, "987654321987654321987654321", Regime::rh);
  CHECK(a.value == b.value);
  BoundOptions wide;
  wide.precision_bits = 1024;
  const auto c = inverse_bound(4, "987654321987654321987654321", Regime::rh, wide);
  CHECK(close(dec(a.value), dec(c.value), 38));
}

TEST_CASE("constructive bounds") {
  CHECK(constructive_bound(3, 1).value == "1");
  CHECK(constructive_bound(3, 2).value == "2");
  CHECK(constructive_bound(3, 3).value == "5");
  CHECK(constructive_bound(5, 3).value == "7");

  const auto b11 = constructive_bound(3, 11);
  CHECK(b11.value == "1330");
  CHECK(b11.construction == "bose");
  CHECK(b11.q == 11u);

  const auto s12 = constructive_bound(3, 12);
  CHECK(s12.value == "1464");
  CHECK(s12.construction == "singer");
  CHECK(s12.q == 11u);

  // oracle: try every prime power by trial division
  for (int h = 2; h <= 5; ++h) {
    for (std::uint64_t k = 4; k <= 60; ++k) {
      unsigned __int128 best = ~static_cast<unsigned __int128>(0);
      for (std::uint64_t q = 2; q <= 2 * k; ++q) {
        if (!as_prime_power(q)) continue;
        unsigned __int128 pw = 1;
        for (int i = 0; i < h; ++i) pw *= q;
        if (q >= k) best = std::min(best, pw - 1);
        if (q + 1 >= k) best = std::min(best, (pw * q - 1) / (q - 1));
      }
      CHECK(constructive_bound(h, k).value == std::to_string(static_cast<std::uint64_t>(best)));
    }
  }
}

TEST_CASE("constructive beats the unconditional formula") {
  for (int h = 2; h <= 5; ++h) {
    for (std::uint64_t k = 4; k <= 200; ++k) {
      const auto c = constructive_bound(h, k);
      const auto f = inverse_bound(h, std::to_string(k), Regime::unconditional);
      CHECK(value_exceeds(f, std::stoull(c.value)));
    }
  }
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(inverse_bound(3, "3", Regime::rh), Error);
  CHECK_THROWS_AS(inverse_bound(3, "1e5", Regime::rh), Error);
  CHECK_THROWS_AS(density_bound(3, "5", Regime::rh), Error);
  CHECK_THROWS_AS(inverse_bound(1, "10", Regime::rh), Error);
  CHECK_THROWS_AS(constructive_bound(3, 0), Error);
  BoundOptions low;
  low.precision_bits = 64;
  CHECK_THROWS_AS(inverse_bound(3, "10", Regime::rh, low), Error);
}
