#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace bh {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;
std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;

/// Inverse of a modulo m; nullopt when gcd(a, m) != 1.
std::optional<std::uint64_t> inverse_mod(std::uint64_t a, std::uint64_t m) noexcept;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

/// Prime factorization as (prime, multiplicity) pairs in increasing order.
/// Trial division with a primality shortcut on the cofactor; intended for
/// n below ~2^44.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// base^exp, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) noexcept;

/// Largest r with r^e <= n.
std::uint64_t integer_root(std::uint64_t n, unsigned e) noexcept;

/// (p, e) with n = p^e and p prime, if n is a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> as_prime_power(std::uint64_t n) noexcept;

/// Smallest prime power >= n (n >= 2).
std::uint64_t next_prime_power(std::uint64_t n);

/// Units of Z/MZ in increasing order, 1 <= d <= M (M = 1 yields {1}).
std::vector<std::uint64_t> units_mod(std::uint64_t m);

/// a mod m mapped into [1, m] (the zero class is written as m).
inline std::uint64_t to_one_based(std::uint64_t a, std::uint64_t m) noexcept {
  const std::uint64_t r = a % m;
  return r == 0 ? m : r;
}

}  // namespace bh
