#pragma once

#include <cstdint>
#include <vector>

#include "bh/field.hpp"
#include "bh/sets.hpp"

namespace bh {

/// Degree of the field the family lives in, over F_p: e*h (Bose) or e*(h+1) (Singer).
unsigned family_field_degree(Family family, int h, const PrimePower& q);

/// q^h - 1 (Bose) or (q^(h+1) - 1)/(q - 1) (Singer).
std::uint64_t family_modulus(Family family, int h, const PrimePower& q);

/// Width of the window [1, W] that b is reduced into before classification:
/// (q^h - 1)/(q - 1) for Bose, the Singer modulus for Singer.
std::uint64_t family_window(Family family, int h, const PrimePower& q);

/// Builds F_{q^h} or F_{q^(h+1)} from the Conway database (or override).
FieldCtx family_field(Family family, int h, const PrimePower& q, const BuildOptions& options = {});

/// { a mod q^h-1 : t^a = t^b + v, v in F_q }. Throws DegreeTooLow when t^b
/// has degree < h over F_q, InvalidArgument when ctx is not F_{q^h}.
CyclicSet bose(const FieldCtx& ctx, int h, const PrimePower& q, std::uint64_t b);

/// { a mod (q^(h+1)-1)/(q-1) : t^a = u t^b + v, (u, v) != (0, 0) in F_q }.
CyclicSet singer(const FieldCtx& ctx, int h, const PrimePower& q, std::uint64_t b);

CyclicSet construct(const FieldCtx& ctx, Family family, int h, const PrimePower& q, std::uint64_t b);

/// Convenience overloads that build the Conway field first.
CyclicSet bose(int h, const PrimePower& q, std::uint64_t b);
CyclicSet singer(int h, const PrimePower& q, std::uint64_t b);

/// All b in [1, window] whose t^b has full degree (h for Bose, h+1 for Singer).
std::vector<std::uint64_t> valid_b_values(const FieldCtx& ctx, Family family, int h, const PrimePower& q);

}  // namespace bh
