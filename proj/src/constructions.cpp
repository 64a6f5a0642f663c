#include "bh/constructions.hpp"

#include <algorithm>
#include <string>

#include "bh/error.hpp"
#include "bh/number_theory.hpp"

namespace bh {

namespace {

void require_h(int h) {
  if (h < 2) fail(ErrorCode::invalid_argument, "h must be >= 2, got " + std::to_string(h));
}

unsigned full_degree(Family family, int h) { return static_cast<unsigned>(family == Family::bose ? h : h + 1); }

std::uint64_t q_power(const PrimePower& q, unsigned exp) {
  const auto v = checked_pow(q.q, exp);
  if (!v) fail(ErrorCode::capacity_exceeded, std::to_string(q.q) + "^" + std::to_string(exp) + " overflows");
  return *v;
}

void require_family_field(const FieldCtx& ctx, Family family, int h, const PrimePower& q) {
  require_h(h);
  if (ctx.characteristic() != q.p || ctx.degree() != family_field_degree(family, h, q)) {
    fail(ErrorCode::invalid_argument, "field F_" + std::to_string(ctx.characteristic()) + "^" +
                                          std::to_string(ctx.degree()) + " does not match " +
                                          std::string(to_string(family)) + " parameters h=" + std::to_string(h) +
                                          " q=" + std::to_string(q.q));
  }
}

void require_full_degree(const FieldCtx& ctx, Family family, int h, const PrimePower& q, std::uint64_t b) {
  const unsigned want = full_degree(family, h);
  const unsigned got = ctx.exponent_degree(b, q);
  if (got != want) {
    fail(ErrorCode::degree_too_low, "t^" + std::to_string(b) + " has degree " + std::to_string(got) + " over F_" +
                                        std::to_string(q.q) + ", need " + std::to_string(want));
  }
}

}  // namespace

unsigned family_field_degree(Family family, int h, const PrimePower& q) { return q.e * full_degree(family, h); }

std::uint64_t family_modulus(Family family, int h, const PrimePower& q) {
  require_h(h);
  if (family == Family::bose) return q_power(q, static_cast<unsigned>(h)) - 1;
  return (q_power(q, static_cast<unsigned>(h + 1)) - 1) / (q.q - 1);
}

std::uint64_t family_window(Family family, int h, const PrimePower& q) {
  if (family == Family::bose) return family_modulus(family, h, q) / (q.q - 1);
  return family_modulus(family, h, q);
}

FieldCtx family_field(Family family, int h, const PrimePower& q, const BuildOptions& options) {
  require_h(h);
  return build_field(q.p, family_field_degree(family, h, q), std::nullopt, options);
}

CyclicSet bose(const FieldCtx& ctx, int h, const PrimePower& q, std::uint64_t b) {
  require_family_field(ctx, Family::bose, h, q);
  const std::uint64_t m = ctx.group_order();
  b %= m;
  require_full_degree(ctx, Family::bose, h, q, b);
  const FieldCtx::Key beta = ctx.exp_key(b);
  std::vector<std::uint64_t> residues;
  residues.reserve(q.q);
  for (auto v : ctx.subfield_keys(q)) residues.push_back(ctx.dlog_key(ctx.add_key(beta, v)));
  CyclicSet out = CyclicSet::from_residues(m, residues);
  out.meta = BhParams{Family::bose, h, q, b};
  return out;
}

CyclicSet singer(const FieldCtx& ctx, int h, const PrimePower& q, std::uint64_t b) {
  require_family_field(ctx, Family::singer, h, q);
  const std::uint64_t group = ctx.group_order();
  const std::uint64_t m = group / (q.q - 1);
  b %= group;
  require_full_degree(ctx, Family::singer, h, q, b);
  const auto scalars = ctx.subfield_keys(q);
  // scalars[0] is zero; scalars[1 + j] = t^(j*m)
  std::vector<std::uint64_t> residues;
  residues.reserve(q.q * q.q);
  for (std::size_t u = 0; u < scalars.size(); ++u) {
    const FieldCtx::Key ub = u == 0 ? 0 : ctx.exp_key(b + (u - 1) * m);
    for (auto v : scalars) {
      const FieldCtx::Key x = ctx.add_key(ub, v);
      if (x == 0) continue;
      residues.push_back(ctx.dlog_key(x) % m);
    }
  }
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  CyclicSet out = CyclicSet::from_residues(m, residues);
  out.meta = BhParams{Family::singer, h, q, b};
  return out;
}

CyclicSet construct(const FieldCtx& ctx, Family family, int h, const PrimePower& q, std::uint64_t b) {
  return family == Family::bose ? bose(ctx, h, q, b) : singer(ctx, h, q, b);
}

CyclicSet bose(int h, const PrimePower& q, std::uint64_t b) {
  return bose(family_field(Family::bose, h, q), h, q, b);
}

CyclicSet singer(int h, const PrimePower& q, std::uint64_t b) {
  return singer(family_field(Family::singer, h, q), h, q, b);
}

std::vector<std::uint64_t> valid_b_values(const FieldCtx& ctx, Family family, int h, const PrimePower& q) {
  require_family_field(ctx, family, h, q);
  const std::uint64_t window = family_window(family, h, q);
  const unsigned want = full_degree(family, h);
  std::vector<std::uint64_t> out;
  for (std::uint64_t b = 1; b <= window; ++b) {
    if (ctx.exponent_degree(b, q) == want) out.push_back(b);
  }
  return out;
}

}  // namespace bh
