#include "bh/bounds.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <memory>

#include "bh/error.hpp"
#include "bh/number_theory.hpp"

namespace bh {

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::unconditional: return "unconditional";
    case Regime::large_k: return "large-k";
    case Regime::bhp: return "BHP";
    case Regime::rh: return "RH";
    case Regime::constructive: return "constructive";
  }
  return "?";
}

Regime parse_regime(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "unconditional") return Regime::unconditional;
  if (lower == "large-k" || lower == "large_k") return Regime::large_k;
  if (lower == "bhp") return Regime::bhp;
  if (lower == "rh") return Regime::rh;
  if (lower == "constructive") return Regime::constructive;
  fail(ErrorCode::invalid_argument, "unknown regime '" + std::string(text) + "'");
}

std::string_view to_string(Quantity q) noexcept { return q == Quantity::inverse ? "inverse" : "density"; }

namespace {

class Mpz {
 public:
  Mpz() { mpz_init(v_); }
  ~Mpz() { mpz_clear(v_); }
  Mpz(const Mpz&) = delete;
  Mpz& operator=(const Mpz&) = delete;
  mpz_ptr get() { return v_; }

 private:
  mpz_t v_;
};

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  operator mpfr_ptr() { return v_; }

 private:
  mpfr_t v_;
};

struct Input {
  Mpz z;
  std::string text;
};

void parse_integer(std::string_view text, Input& out) {
  std::string s(text);
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
    fail(ErrorCode::invalid_argument, "expected a decimal integer, got '" + s + "'");
  }
  mpz_set_str(out.z.get(), s.c_str(), 10);
  out.text = s;
}

mpfr_prec_t working_precision(const BoundOptions& options, Input& in) {
  if (options.precision_bits < 128) fail(ErrorCode::invalid_argument, "precision must be at least 128 bits");
  const auto bits = static_cast<mpfr_prec_t>(mpz_sizeinbase(in.z.get(), 2));
  return std::max<mpfr_prec_t>(options.precision_bits, bits + 64);
}

// Decimal with `digits` significant digits, rounded in direction rnd.
std::string to_decimal(mpfr_ptr x, unsigned digits, mpfr_rnd_t rnd) {
  if (mpfr_zero_p(x)) return "0";
  mpfr_exp_t exp = 0;
  std::unique_ptr<char, void (*)(char*)> raw(mpfr_get_str(nullptr, &exp, 10, digits, x, rnd), mpfr_free_str);
  std::string mant(raw.get());
  std::string sign;
  if (mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  // value = 0.mant * 10^exp
  if (exp >= 1 && exp <= static_cast<mpfr_exp_t>(digits)) {
    std::string out = mant.substr(0, exp);
    std::string frac = mant.substr(exp);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
    return sign + out;
  }
  std::string frac = mant.substr(1);
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string out = sign + mant.substr(0, 1);
  if (!frac.empty()) out += "." + frac;
  const long e10 = static_cast<long>(exp) - 1;
  out += (e10 < 0 ? "e-" : "e+") + std::to_string(e10 < 0 ? -e10 : e10);
  return out;
}

void check_h(int h) {
  if (h < 2) fail(ErrorCode::invalid_argument, "h must be >= 2");
}

// base^(num/den), rounded in direction rnd; base >= 1 so the exponent is
// rounded the same way.
void pow_ratio(mpfr_ptr out, mpfr_ptr base, unsigned long num, unsigned long den, mpfr_rnd_t rnd) {
  Mpfr e(mpfr_get_prec(out));
  mpfr_set_ui(e, num, rnd);
  mpfr_div_ui(e, e, den, rnd);
  mpfr_pow(out, base, e, rnd);
}

}  // namespace

BoundReport inverse_bound(int h, std::string_view k_text, Regime regime, const BoundOptions& options) {
  check_h(h);
  Input in;
  parse_integer(k_text, in);
  if (mpz_cmp_ui(in.z.get(), 4) < 0) fail(ErrorCode::invalid_argument, "formula bounds need k >= 4");
  const auto prec = working_precision(options, in);
  const auto hu = static_cast<unsigned long>(h);
  constexpr mpfr_rnd_t up = MPFR_RNDU;

  BoundReport r;
  r.h = h;
  r.quantity = Quantity::inverse;
  r.argument = in.text;
  r.regime = regime;
  r.relation = "<";
  r.precision_bits = static_cast<unsigned>(prec);

  Mpfr k(prec), total(prec), term(prec), aux(prec);
  mpfr_set_z(k, in.z.get(), up);
  mpfr_pow_ui(total, k, hu, up);
  switch (regime) {
    case Regime::unconditional:
      // k^(h - 1/155) = k^((155h - 1)/155)
      pow_ratio(term, k, 155 * hu - 1, 155, up);
      mpfr_ui_pow_ui(aux, 3, 155 * hu, up);
      mpfr_mul(term, term, aux, up);
      mpfr_add(total, total, term, up);
      r.formula = "k^h + 3^(155h) k^(h-1/155)";
      r.hypotheses = "k >= 4";
      break;
    case Regime::large_k:
      mpfr_mul_ui(aux, k, 3, up);
      pow_ratio(term, aux, 3 * hu - 1, 3, up);
      mpfr_add(total, total, term, up);
      r.formula = "k^h + (3k)^(h-1/3)";
      r.hypotheses = "k > e^{e^{34}}";
      break;
    case Regime::bhp:
      pow_ratio(term, k, 40 * hu - 19, 40, up);
      mpfr_mul_2ui(term, term, hu, up);
      mpfr_add(total, total, term, up);
      r.formula = "k^h + 2^h k^(h-19/40)";
      r.hypotheses = "sufficiently large";
      break;
    case Regime::rh: {
      Mpfr lg(prec);
      mpfr_mul_ui(lg, k, 20, up);
      mpfr_log(lg, lg, up);
      pow_ratio(term, k, 2 * hu - 1, 2, up);
      mpfr_mul(term, term, lg, up);
      mpfr_add(total, total, term, up);
      mpfr_pow_ui(term, k, hu - 1, up);
      mpfr_mul_ui(term, term, 2, up);
      mpfr_pow_ui(aux, lg, 2 * hu, up);
      mpfr_mul(term, term, aux, up);
      mpfr_add(total, total, term, up);
      r.formula = "k^h + log(20k) k^(h-1/2) + 2 k^(h-1) log^(2h)(20k)";
      r.hypotheses = "Assuming the Riemann Hypothesis";
      break;
    }
    case Regime::constructive:
      fail(ErrorCode::invalid_argument, "use constructive_bound for the constructive regime");
  }
  r.value = r.raw_value = to_decimal(total, options.digits, up);
  return r;
}

BoundReport density_bound(int h, std::string_view n_text, Regime regime, const BoundOptions& options) {
  check_h(h);
  Input in;
  parse_integer(n_text, in);
  if (mpz_cmp_ui(in.z.get(), static_cast<unsigned long>(h) + 3) < 0) {
    fail(ErrorCode::invalid_argument, "formula bounds need n >= h + 3");
  }
  const auto prec = working_precision(options, in);
  const auto hu = static_cast<unsigned long>(h);
  constexpr mpfr_rnd_t up = MPFR_RNDU, down = MPFR_RNDD;

  BoundReport r;
  r.h = h;
  r.quantity = Quantity::density;
  r.argument = in.text;
  r.regime = regime;
  r.relation = ">=";
  r.precision_bits = static_cast<unsigned>(prec);

  // main term rounded down, error term rounded up
  Mpfr n(prec), root(prec), err(prec), aux(prec);
  mpfr_set_z(n, in.z.get(), MPFR_RNDN);
  mpfr_rootn_ui(root, n, hu, down);
  switch (regime) {
    case Regime::unconditional:
      pow_ratio(err, n, 154, 155 * hu, up);
      mpfr_mul_2ui(err, err, 44, up);
      r.formula = "n^(1/h) - 2^44 n^(154/(155h))";
      r.hypotheses = "n >= h+3";
      break;
    case Regime::large_k:
      pow_ratio(err, n, 2, 3 * hu, up);
      mpfr_mul_ui(err, err, 7, up);
      r.relation = ">";
      r.formula = "n^(1/h) - 7 n^(2/(3h))";
      r.hypotheses = "n > e^{e^{34}}";
      break;
    case Regime::bhp:
      pow_ratio(err, n, 21, 40 * hu, up);
      r.formula = "n^(1/h) - n^(21/(40h))";
      r.hypotheses = "sufficiently large";
      break;
    case Regime::rh:
      mpfr_log(aux, n, up);
      mpfr_div_ui(aux, aux, hu, up);
      mpfr_add_ui(aux, aux, 7, up);
      pow_ratio(err, n, 1, 2 * hu, up);
      mpfr_mul(err, err, aux, up);
      r.formula = "n^(1/h) - (7 + log(n)/h) n^(1/(2h))";
      r.hypotheses = "Assuming the Riemann Hypothesis";
      break;
    case Regime::constructive:
      fail(ErrorCode::invalid_argument, "the constructive regime only bounds R_h^{-1}(k)");
  }
  mpfr_sub(root, root, err, down);
  r.raw_value = to_decimal(root, options.digits, down);
  r.vacuous = mpfr_sgn(root.get()) < 0;
  r.value = r.vacuous ? "0" : r.raw_value;
  return r;
}

BoundPair unconditional_bounds(int h, std::string_view k, std::string_view n, const BoundOptions& options) {
  return {inverse_bound(h, k, Regime::unconditional, options), density_bound(h, n, Regime::unconditional, options)};
}

BoundPair conditional_bounds(int h, std::string_view k, std::string_view n, Regime regime,
                             const BoundOptions& options) {
  if (regime != Regime::large_k && regime != Regime::bhp && regime != Regime::rh) {
    fail(ErrorCode::invalid_argument, "conditional regimes are large-k, BHP and RH");
  }
  return {inverse_bound(h, k, regime, options), density_bound(h, n, regime, options)};
}

BoundReport constructive_bound(int h, std::uint64_t k) {
  check_h(h);
  if (k == 0) fail(ErrorCode::invalid_argument, "k must be positive");
  BoundReport r;
  r.h = h;
  r.quantity = Quantity::inverse;
  r.argument = std::to_string(k);
  r.regime = Regime::constructive;
  r.relation = "<=";
  if (k <= 3) {
    const std::uint64_t v = k == 1 ? 1 : k == 2 ? 2 : static_cast<std::uint64_t>(h) + 2;
    r.value = r.raw_value = std::to_string(v);
    r.formula = k == 3 ? "h+2" : std::to_string(v);
    r.construction = "closed form";
    return r;
  }
  const auto hu = static_cast<unsigned>(h);
  const auto too_big = [&] { fail(ErrorCode::capacity_exceeded, "constructive bound exceeds 64 bits"); };

  const std::uint64_t qb = next_prime_power(k);
  const auto bose_pow = checked_pow(qb, hu);
  if (!bose_pow) too_big();
  const std::uint64_t bose_value = *bose_pow - 1;

  const std::uint64_t qs = next_prime_power(k - 1);
  const auto singer_pow = checked_pow(qs, hu + 1);
  unsigned __int128 singer_value = 0;
  if (singer_pow) {
    singer_value = (*singer_pow - 1) / (qs - 1);
  } else {
    unsigned __int128 p = 1;
    for (unsigned i = 0; i <= hu; ++i) p *= qs;
    singer_value = (p - 1) / (qs - 1);
  }

  if (singer_value < bose_value) {
    r.value = r.raw_value = std::to_string(static_cast<std::uint64_t>(singer_value));
    r.q = qs;
    r.construction = "singer";
    r.formula = "(q^(h+1)-1)/(q-1)";
  } else {
    r.value = r.raw_value = std::to_string(bose_value);
    r.q = qb;
    r.construction = "bose";
    r.formula = "q^h-1";
  }
  return r;
}

bool value_exceeds(const BoundReport& report, std::uint64_t x) {
  Mpfr v(512), y(512);
  if (mpfr_set_str(v, report.value.c_str(), 10, MPFR_RNDN) != 0) {
    fail(ErrorCode::parse_error, "bad bound value '" + report.value + "'");
  }
  mpfr_set_ui(y, x, MPFR_RNDN);
  return mpfr_greater_p(v, y) != 0;
}

}  // namespace bh
