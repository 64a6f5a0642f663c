#include "bh/number_theory.hpp"

#include <bit>

#include "bh/error.hpp"

namespace bh {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::optional<std::uint64_t> inverse_mod(std::uint64_t a, std::uint64_t m) noexcept {
  if (m == 1) return 0;
  __int128 r0 = static_cast<__int128>(m), r1 = static_cast<__int128>(a % m);
  __int128 t0 = 0, t1 = 1;
  while (r1 != 0) {
    const __int128 quot = r0 / r1;
    const __int128 r2 = r0 - quot * r1;
    r0 = r1;
    r1 = r2;
    const __int128 t2 = t0 - quot * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1) return std::nullopt;
  if (t0 < 0) t0 += m;
  return static_cast<std::uint64_t>(t0);
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // This base set is deterministic for n < 3.3e24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  if (n < 2) return out;
  auto strip = [&](std::uint64_t f) {
    unsigned mult = 0;
    while (n % f == 0) {
      n /= f;
      ++mult;
    }
    if (mult != 0) out.emplace_back(f, mult);
  };
  strip(2);
  for (std::uint64_t f = 3; f <= n / f; f += 2) {
    if (is_prime(n)) break;
    strip(f);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (const auto& [prime, mult] : factorize(n)) out.push_back(prime);
  return out;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) noexcept {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > UINT64_MAX / base) return std::nullopt;
    result *= base;
  }
  return result;
}

std::uint64_t integer_root(std::uint64_t n, unsigned e) noexcept {
  if (e <= 1 || n < 2) return n;
  std::uint64_t lo = 1, hi = std::uint64_t{1} << (64 / e + 1);
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    const auto power = checked_pow(mid, e);
    if (power && *power <= n) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

std::optional<std::pair<std::uint64_t, unsigned>> as_prime_power(std::uint64_t n) noexcept {
  if (n < 2) return std::nullopt;
  const unsigned max_exp = static_cast<unsigned>(std::bit_width(n)) - 1;
  for (unsigned e = max_exp; e >= 1; --e) {
    const std::uint64_t r = integer_root(n, e);
    const auto power = checked_pow(r, e);
    if (power && *power == n && is_prime(r)) return std::make_pair(r, e);
  }
  return std::nullopt;
}

std::uint64_t next_prime_power(std::uint64_t n) {
  if (n < 2) n = 2;
  for (std::uint64_t m = n;; ++m) {
    if (m == UINT64_MAX) fail(ErrorCode::capacity_exceeded, "no prime power representable above " + std::to_string(n));
    if (as_prime_power(m)) return m;
  }
}

std::vector<std::uint64_t> units_mod(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  if (m == 1) return {1};
  for (std::uint64_t d = 1; d < m; ++d) {
    if (gcd(d, m) == 1) out.push_back(d);
  }
  return out;
}

}  // namespace bh
