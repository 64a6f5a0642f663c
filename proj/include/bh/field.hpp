#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bh {

/// q = p^e with p prime.
struct PrimePower {
  std::uint64_t p = 0;
  unsigned e = 0;
  std::uint64_t q = 0;

  /// Throws InvalidArgument unless q is a prime power.
  static PrimePower from_q(std::uint64_t q);
  static PrimePower from_pe(std::uint64_t p, unsigned e);

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Polynomial over F_p, lowest degree first.
struct Poly {
  std::vector<std::uint64_t> coeffs;

  /// Index of the last nonzero coefficient; -1 for the zero polynomial.
  int degree() const noexcept;
  bool is_monic() const noexcept;

  friend bool operator==(const Poly&, const Poly&) = default;
};

/// Coordinates in the power basis 1, t, ..., t^(n-1) of the owning field.
struct FieldElem {
  std::vector<std::uint32_t> coeffs;

  bool is_zero() const noexcept;

  friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

/// Conway polynomials keyed by (p, n), read from Luebeck's list format:
///   allConwayPolynomials := [
///   [2,1,[1,1]],
///   ...
///   0];
class ConwayDatabase {
 public:
  static ConwayDatabase parse(std::string_view text);
  static ConwayDatabase load(const std::filesystem::path& path);

  /// The copy compiled into the library.
  static const ConwayDatabase& bundled();

  /// BHSETS_CONWAY_DB if set, otherwise the bundled copy.
  static const ConwayDatabase& default_db();

  std::optional<Poly> find(std::uint64_t p, unsigned n) const;
  std::size_t size() const noexcept { return polys_.size(); }

 private:
  std::map<std::pair<std::uint64_t, unsigned>, Poly> polys_;
};

struct BuildOptions {
  /// nullptr selects ConwayDatabase::default_db().
  const ConwayDatabase* db = nullptr;
  /// Largest p^n for which discrete-log tables are built. Memory is roughly
  /// 8 bytes per field element.
  std::uint64_t max_order = std::uint64_t{1} << 26;
};

/// Hard ceiling on p^n imposed by the 32-bit table encoding.
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 32;

/// F_{p^n} presented as F_p[t]/C(t) where t generates the multiplicative
/// group. Immutable once built; every member is const and reentrant.
class FieldCtx {
 public:
  enum class Source { conway_db, user_supplied };

  /// Packed element: sum of coeffs[i] * p^i.
  using Key = std::uint32_t;

  std::uint64_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return n_; }
  /// p^n
  std::uint64_t order() const noexcept { return order_; }
  /// p^n - 1, the order of the generator.
  std::uint64_t group_order() const noexcept { return order_ - 1; }
  const Poly& modulus() const noexcept { return modulus_; }
  Source source() const noexcept { return source_; }

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem generator() const;
  FieldElem constant(std::uint64_t c) const;
  /// Validates length and digit range.
  FieldElem element(std::vector<std::uint32_t> coeffs) const;

  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  /// Schoolbook product reduced modulo the modulus polynomial.
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  FieldElem pow(const FieldElem& a, std::uint64_t k) const;
  FieldElem inv(const FieldElem& a) const;

  /// t^a for any a (reduced mod p^n - 1).
  FieldElem exp(std::uint64_t a) const;
  /// Exponent in [0, p^n - 2]; throws LogOfZero.
  std::uint64_t dlog(const FieldElem& x) const;

  Key key(const FieldElem& x) const;
  FieldElem from_key(Key k) const;
  Key exp_key(std::uint64_t a) const noexcept { return exp_[a % group_order()]; }
  /// Requires k != 0.
  std::uint64_t dlog_key(Key k) const noexcept { return log_[k]; }
  Key add_key(Key a, Key b) const noexcept;
  Key neg_key(Key a) const noexcept;

  /// Throws SubfieldMismatch unless q.p == p and q.e divides n.
  void require_subfield(const PrimePower& q) const;
  /// The q elements of F_q inside this field, zero first.
  std::vector<Key> subfield_keys(const PrimePower& q) const;

  /// Smallest d >= 1 with x^(q^d) = x.
  unsigned algebraic_degree(const FieldElem& x, const PrimePower& q) const;
  bool in_subfield(const FieldElem& x, const PrimePower& q) const;
  /// Same as algebraic_degree(exp(a), q), computed on exponents.
  unsigned exponent_degree(std::uint64_t a, const PrimePower& q) const;

 private:
  friend FieldCtx build_field(std::uint64_t, unsigned, const std::optional<Poly>&, const BuildOptions&);

  FieldCtx() = default;
  void check(const FieldElem& x) const;
  void build_tables();

  std::uint64_t p_ = 0;
  unsigned n_ = 0;
  std::uint64_t order_ = 0;
  Poly modulus_;
  Source source_ = Source::conway_db;
  std::vector<Key> exp_;
  std::vector<std::uint32_t> log_;
};

/// F_{p^n} with the Conway polynomial C_{p,n}, or with a verified
/// user-supplied monic modulus. Errors: UnknownConwayPolynomial,
/// NotIrreducible, NotGenerator, CapacityExceeded.
FieldCtx build_field(std::uint64_t p, unsigned n, const std::optional<Poly>& override_modulus = std::nullopt,
                     const BuildOptions& options = {});

/// Rabin's irreducibility test over F_p.
bool is_irreducible(const Poly& f, std::uint64_t p);

}  // namespace bh
