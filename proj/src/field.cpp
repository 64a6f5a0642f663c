#include "bh/field.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "bh/error.hpp"
#include "bh/number_theory.hpp"

namespace bh {

std::string_view bundled_conway_text();  // conway_data.cpp (generated)

PrimePower PrimePower::from_q(std::uint64_t q) {
  const auto pe = as_prime_power(q);
  if (!pe) fail(ErrorCode::invalid_argument, std::to_string(q) + " is not a prime power");
  return PrimePower{pe->first, pe->second, q};
}

PrimePower PrimePower::from_pe(std::uint64_t p, unsigned e) {
  if (!is_prime(p)) fail(ErrorCode::invalid_argument, std::to_string(p) + " is not prime");
  if (e == 0) fail(ErrorCode::invalid_argument, "prime power exponent must be >= 1");
  const auto q = checked_pow(p, e);
  if (!q) fail(ErrorCode::capacity_exceeded, "p^e overflows 64 bits");
  return PrimePower{p, e, *q};
}

int Poly::degree() const noexcept {
  for (std::size_t i = coeffs.size(); i > 0; --i) {
    if (coeffs[i - 1] != 0) return static_cast<int>(i - 1);
  }
  return -1;
}

bool Poly::is_monic() const noexcept {
  const int d = degree();
  return d >= 0 && coeffs[static_cast<std::size_t>(d)] == 1;
}

bool FieldElem::is_zero() const noexcept {
  for (auto c : coeffs) {
    if (c != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Polynomials over F_p, used for modulus verification only.

namespace {

using PolyVec = std::vector<std::uint64_t>;

void trim(PolyVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod f, f monic.
PolyVec poly_mod(PolyVec a, const PolyVec& f, std::uint64_t p) {
  trim(a);
  const std::size_t n = f.size() - 1;
  while (a.size() > n) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - n;
    for (std::size_t i = 0; i <= n; ++i) {
      a[shift + i] = (a[shift + i] + p - mul_mod(lead, f[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

PolyVec poly_mulmod(const PolyVec& a, const PolyVec& b, const PolyVec& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PolyVec prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + mul_mod(a[i], b[j], p)) % p;
    }
  }
  return poly_mod(std::move(prod), f, p);
}

PolyVec poly_powmod(PolyVec base, std::uint64_t exp, const PolyVec& f, std::uint64_t p) {
  PolyVec result = poly_mod({1}, f, p);
  base = poly_mod(std::move(base), f, p);
  while (exp != 0) {
    if (exp & 1U) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    exp >>= 1U;
  }
  return result;
}

PolyVec poly_sub(PolyVec a, const PolyVec& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

// gcd normalised to monic; empty for the zero polynomial.
PolyVec poly_gcd(PolyVec a, PolyVec b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const std::uint64_t inv_lead = *inverse_mod(b.back(), p);
    for (auto& c : b) c = mul_mod(c, inv_lead, p);
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  if (!a.empty()) {
    const std::uint64_t inv_lead = *inverse_mod(a.back(), p);
    for (auto& c : a) c = mul_mod(c, inv_lead, p);
  }
  return a;
}

}  // namespace

bool is_irreducible(const Poly& f, std::uint64_t p) {
  const int deg = f.degree();
  if (deg < 1 || !f.is_monic()) return false;
  const auto n = static_cast<unsigned>(deg);
  if (n == 1) return true;
  PolyVec fv(f.coeffs.begin(), f.coeffs.begin() + deg + 1);
  const PolyVec x{0, 1};
  // frob[i] = x^(p^i) mod f
  std::vector<PolyVec> frob{poly_mod(x, fv, p)};
  for (unsigned i = 1; i <= n; ++i) frob.push_back(poly_powmod(frob.back(), p, fv, p));
  if (!poly_sub(frob[n], x, p).empty()) return false;
  for (auto ell : prime_divisors(n)) {
    const auto g = poly_gcd(fv, poly_sub(frob[n / ell], x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Conway database

namespace {

class ConwayParser {
 public:
  explicit ConwayParser(std::string_view text) : text_(text) {}

  std::map<std::pair<std::uint64_t, unsigned>, Poly> run() {
    std::map<std::pair<std::uint64_t, unsigned>, Poly> out;
    if (const auto assign = text_.find(":="); assign != std::string_view::npos) pos_ = assign + 2;
    skip_ws();
    bool wrapped = false;
    if (peek() == '[') {
      // "[[" opens the outer list; "[2," is a bare entry.
      std::size_t probe = pos_ + 1;
      while (probe < text_.size() && std::isspace(static_cast<unsigned char>(text_[probe]))) ++probe;
      if (probe < text_.size() && text_[probe] == '[') {
        wrapped = true;
        ++pos_;
      }
    }
    for (;;) {
      skip_ws();
      while (peek() == ',') {
        ++pos_;
        skip_ws();
      }
      const char c = peek();
      if (c == '\0') break;
      if (c == ']') {
        if (!wrapped) error("unexpected ']'");
        ++pos_;
        skip_ws();
        if (peek() == ';') ++pos_;
        skip_ws();
        if (peek() != '\0') error("trailing content after list");
        break;
      }
      if (c == '0') {  // end marker
        ++pos_;
        continue;
      }
      if (c != '[') error("expected '['");
      auto [key, poly] = entry();
      out[key] = std::move(poly);
    }
    return out;
  }

 private:
  std::pair<std::pair<std::uint64_t, unsigned>, Poly> entry() {
    expect('[');
    const std::uint64_t p = integer();
    expect(',');
    const std::uint64_t n = integer();
    expect(',');
    expect('[');
    Poly poly;
    poly.coeffs.push_back(integer());
    skip_ws();
    while (peek() == ',') {
      ++pos_;
      poly.coeffs.push_back(integer());
      skip_ws();
    }
    expect(']');
    expect(']');
    if (!is_prime(p)) error("characteristic " + std::to_string(p) + " is not prime");
    if (n == 0 || n > 64 || poly.coeffs.size() != n + 1) error("coefficient count does not match degree");
    if (poly.coeffs.back() != 1) error("polynomial is not monic");
    for (auto c : poly.coeffs) {
      if (c >= p) error("coefficient out of range");
    }
    return {{p, static_cast<unsigned>(n)}, std::move(poly)};
  }

  std::uint64_t integer() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) error("expected integer");
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      const auto digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (UINT64_MAX - digit) / 10) error("integer overflow");
      v = v * 10 + digit;
      ++pos_;
    }
    return v;
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::parse_error, "Conway database at offset " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ConwayDatabase ConwayDatabase::parse(std::string_view text) {
  ConwayDatabase db;
  db.polys_ = ConwayParser(text).run();
  return db;
}

ConwayDatabase ConwayDatabase::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open Conway database " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const ConwayDatabase& ConwayDatabase::bundled() {
  static const ConwayDatabase db = parse(bundled_conway_text());
  return db;
}

const ConwayDatabase& ConwayDatabase::default_db() {
  static const ConwayDatabase* db = [] {
    if (const char* path = std::getenv("BHSETS_CONWAY_DB"); path != nullptr && *path != '\0') {
      return static_cast<const ConwayDatabase*>(new ConwayDatabase(load(path)));
    }
    return &bundled();
  }();
  return *db;
}

std::optional<Poly> ConwayDatabase::find(std::uint64_t p, unsigned n) const {
  const auto it = polys_.find({p, n});
  if (it == polys_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// FieldCtx

void FieldCtx::check(const FieldElem& x) const {
  if (x.coeffs.size() != n_) {
    fail(ErrorCode::dimension_mismatch,
         "element has " + std::to_string(x.coeffs.size()) + " coordinates, field degree is " + std::to_string(n_));
  }
}

FieldElem FieldCtx::zero() const { return FieldElem{std::vector<std::uint32_t>(n_, 0)}; }

FieldElem FieldCtx::one() const { return constant(1); }

FieldElem FieldCtx::generator() const { return exp(1); }

FieldElem FieldCtx::constant(std::uint64_t c) const {
  FieldElem x = zero();
  x.coeffs[0] = static_cast<std::uint32_t>(c % p_);
  return x;
}

FieldElem FieldCtx::element(std::vector<std::uint32_t> coeffs) const {
  FieldElem x{std::move(coeffs)};
  check(x);
  for (auto c : x.coeffs) {
    if (c >= p_) fail(ErrorCode::invalid_argument, "coordinate " + std::to_string(c) + " not reduced mod p");
  }
  return x;
}

FieldElem FieldCtx::add(const FieldElem& a, const FieldElem& b) const {
  check(a);
  check(b);
  FieldElem r = zero();
  for (unsigned i = 0; i < n_; ++i) r.coeffs[i] = static_cast<std::uint32_t>((std::uint64_t{a.coeffs[i]} + b.coeffs[i]) % p_);
  return r;
}

FieldElem FieldCtx::neg(const FieldElem& a) const {
  check(a);
  FieldElem r = zero();
  for (unsigned i = 0; i < n_; ++i) r.coeffs[i] = static_cast<std::uint32_t>((p_ - a.coeffs[i]) % p_);
  return r;
}

FieldElem FieldCtx::sub(const FieldElem& a, const FieldElem& b) const { return add(a, neg(b)); }

FieldElem FieldCtx::mul(const FieldElem& a, const FieldElem& b) const {
  check(a);
  check(b);
  std::vector<std::uint64_t> prod(2 * n_ - 1, 0);
  for (unsigned i = 0; i < n_; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (unsigned j = 0; j < n_; ++j) {
      prod[i + j] = (prod[i + j] + mul_mod(a.coeffs[i], b.coeffs[j], p_)) % p_;
    }
  }
  for (std::size_t top = prod.size(); top-- > n_;) {
    const std::uint64_t lead = prod[top];
    if (lead == 0) continue;
    const std::size_t shift = top - n_;
    for (unsigned i = 0; i <= n_; ++i) {
      prod[shift + i] = (prod[shift + i] + p_ - mul_mod(lead, modulus_.coeffs[i], p_)) % p_;
    }
  }
  FieldElem r = zero();
  for (unsigned i = 0; i < n_; ++i) r.coeffs[i] = static_cast<std::uint32_t>(prod[i]);
  return r;
}

FieldElem FieldCtx::pow(const FieldElem& a, std::uint64_t k) const {
  check(a);
  FieldElem result = one();
  FieldElem base = a;
  while (k != 0) {
    if (k & 1U) result = mul(result, base);
    base = mul(base, base);
    k >>= 1U;
  }
  return result;
}

FieldElem FieldCtx::inv(const FieldElem& a) const {
  check(a);
  if (a.is_zero()) fail(ErrorCode::division_by_zero, "inverse of zero");
  const std::uint64_t la = dlog(a);
  return exp(la == 0 ? 0 : group_order() - la);
}

FieldElem FieldCtx::exp(std::uint64_t a) const { return from_key(exp_key(a)); }

std::uint64_t FieldCtx::dlog(const FieldElem& x) const {
  check(x);
  if (x.is_zero()) fail(ErrorCode::log_of_zero, "discrete log of zero");
  return log_[key(x)];
}

FieldCtx::Key FieldCtx::key(const FieldElem& x) const {
  check(x);
  std::uint64_t k = 0;
  for (unsigned i = n_; i-- > 0;) k = k * p_ + x.coeffs[i];
  return static_cast<Key>(k);
}

FieldElem FieldCtx::from_key(Key k) const {
  FieldElem x = zero();
  std::uint64_t rest = k;
  for (unsigned i = 0; i < n_; ++i) {
    x.coeffs[i] = static_cast<std::uint32_t>(rest % p_);
    rest /= p_;
  }
  return x;
}

FieldCtx::Key FieldCtx::add_key(Key a, Key b) const noexcept {
  if (p_ == 2) return a ^ b;
  std::uint64_t result = 0, place = 1;
  std::uint64_t x = a, y = b;
  for (unsigned i = 0; i < n_; ++i) {
    std::uint64_t digit = x % p_ + y % p_;
    if (digit >= p_) digit -= p_;
    result += digit * place;
    place *= p_;
    x /= p_;
    y /= p_;
  }
  return static_cast<Key>(result);
}

FieldCtx::Key FieldCtx::neg_key(Key a) const noexcept {
  if (p_ == 2) return a;
  std::uint64_t result = 0, place = 1;
  std::uint64_t x = a;
  for (unsigned i = 0; i < n_; ++i) {
    const std::uint64_t digit = x % p_;
    result += (digit == 0 ? 0 : p_ - digit) * place;
    place *= p_;
    x /= p_;
  }
  return static_cast<Key>(result);
}

void FieldCtx::require_subfield(const PrimePower& q) const {
  if (q.p != p_ || q.e == 0 || n_ % q.e != 0) {
    fail(ErrorCode::subfield_mismatch, "F_" + std::to_string(q.q) + " is not a subfield of F_" +
                                           std::to_string(p_) + "^" + std::to_string(n_));
  }
}

std::vector<FieldCtx::Key> FieldCtx::subfield_keys(const PrimePower& q) const {
  require_subfield(q);
  std::vector<Key> out{0};
  const std::uint64_t step = group_order() / (q.q - 1);
  for (std::uint64_t k = 0; k + 1 < q.q; ++k) out.push_back(exp_key(k * step));
  return out;
}

unsigned FieldCtx::exponent_degree(std::uint64_t a, const PrimePower& q) const {
  require_subfield(q);
  const std::uint64_t mod = group_order();
  a %= mod;
  const unsigned max_degree = n_ / q.e;
  std::uint64_t qd = 1;
  for (unsigned d = 1; d < max_degree; ++d) {
    qd = mul_mod(qd, q.q, mod);
    if (mul_mod(a, qd, mod) == a) return d;
  }
  return max_degree;
}

unsigned FieldCtx::algebraic_degree(const FieldElem& x, const PrimePower& q) const {
  require_subfield(q);
  check(x);
  if (x.is_zero()) return 1;
  return exponent_degree(dlog(x), q);
}

bool FieldCtx::in_subfield(const FieldElem& x, const PrimePower& q) const { return algebraic_degree(x, q) == 1; }

void FieldCtx::build_tables() {
  const std::uint64_t group = group_order();
  log_.assign(order_, std::numeric_limits<std::uint32_t>::max());
  exp_.assign(group, 0);

  if (p_ == 2) {
    std::uint64_t reduce = 0;
    for (unsigned i = 0; i < n_; ++i) reduce |= modulus_.coeffs[i] << i;
    const std::uint64_t top_bit = std::uint64_t{1} << n_;
    std::uint64_t cur = 1;
    for (std::uint64_t a = 0; a < group; ++a) {
      if (log_[cur] != std::numeric_limits<std::uint32_t>::max()) fail(ErrorCode::not_generator, "generator cycle too short");
      exp_[a] = static_cast<Key>(cur);
      log_[cur] = static_cast<std::uint32_t>(a);
      cur <<= 1U;
      if (cur & top_bit) cur = (cur ^ top_bit) ^ reduce;
    }
    return;
  }

  std::vector<std::uint64_t> pw(n_, 1);
  for (unsigned i = 1; i < n_; ++i) pw[i] = pw[i - 1] * p_;
  std::vector<std::uint64_t> digits(n_, 0);
  digits[0] = 1;
  std::uint64_t cur = 1;
  for (std::uint64_t a = 0; a < group; ++a) {
    if (log_[cur] != std::numeric_limits<std::uint32_t>::max()) fail(ErrorCode::not_generator, "generator cycle too short");
    exp_[a] = static_cast<Key>(cur);
    log_[cur] = static_cast<std::uint32_t>(a);
    // multiply by t: shift up, then fold the overflow coefficient back in
    const std::uint64_t top = digits[n_ - 1];
    for (unsigned i = n_ - 1; i > 0; --i) digits[i] = digits[i - 1];
    digits[0] = 0;
    cur = 0;
    for (unsigned i = 0; i < n_; ++i) {
      if (top != 0) digits[i] = (digits[i] + p_ - (top * modulus_.coeffs[i]) % p_) % p_;
      cur += digits[i] * pw[i];
    }
  }
}

FieldCtx build_field(std::uint64_t p, unsigned n, const std::optional<Poly>& override_modulus,
                     const BuildOptions& options) {
  if (!is_prime(p)) fail(ErrorCode::invalid_argument, std::to_string(p) + " is not prime");
  if (n == 0) fail(ErrorCode::invalid_argument, "extension degree must be >= 1");
  const auto order = checked_pow(p, n);
  if (!order || *order > kMaxFieldOrder || *order > options.max_order) {
    fail(ErrorCode::capacity_exceeded, "F_" + std::to_string(p) + "^" + std::to_string(n) +
                                           " exceeds the table capacity of " +
                                           std::to_string(std::min(kMaxFieldOrder, options.max_order)) + " elements");
  }

  FieldCtx ctx;
  ctx.p_ = p;
  ctx.n_ = n;
  ctx.order_ = *order;
  if (override_modulus) {
    ctx.modulus_ = *override_modulus;
    ctx.source_ = FieldCtx::Source::user_supplied;
    ctx.modulus_.coeffs.resize(static_cast<std::size_t>(std::max(ctx.modulus_.degree(), 0)) + 1);
    if (ctx.modulus_.degree() != static_cast<int>(n) || !ctx.modulus_.is_monic()) {
      fail(ErrorCode::invalid_argument, "modulus must be monic of degree " + std::to_string(n));
    }
    for (auto c : ctx.modulus_.coeffs) {
      if (c >= p) fail(ErrorCode::invalid_argument, "modulus coefficient not reduced mod p");
    }
  } else {
    const ConwayDatabase& db = options.db != nullptr ? *options.db : ConwayDatabase::default_db();
    auto poly = db.find(p, n);
    if (!poly) {
      fail(ErrorCode::unknown_conway_polynomial,
           "no Conway polynomial C_{" + std::to_string(p) + "," + std::to_string(n) + "} in database");
    }
    ctx.modulus_ = std::move(*poly);
    ctx.source_ = FieldCtx::Source::conway_db;
  }

  if (!is_irreducible(ctx.modulus_, p)) fail(ErrorCode::not_irreducible, "modulus is reducible over F_" + std::to_string(p));

  // t has order exactly p^n - 1 iff t^N = 1 and t^(N/l) != 1 for every prime l | N.
  PolyVec fv(ctx.modulus_.coeffs.begin(), ctx.modulus_.coeffs.end());
  const PolyVec t{0, 1};
  const std::uint64_t group = *order - 1;
  if (poly_powmod(t, group, fv, p) != PolyVec{1}) fail(ErrorCode::not_generator, "root of modulus is not a unit of order p^n-1");
  for (auto ell : prime_divisors(group)) {
    if (poly_powmod(t, group / ell, fv, p) == PolyVec{1}) {
      fail(ErrorCode::not_generator, "root of modulus has order dividing (p^n-1)/" + std::to_string(ell));
    }
  }

  ctx.build_tables();
  return ctx;
}

}  // namespace bh
