#pragma once

// Exact small-integer number theory used by every divisibility check.
//
// All values are signed 64-bit. Anything that would overflow throws
// std::overflow_error instead of wrapping; argument errors throw
// std::invalid_argument.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace huppert {

using Int = std::int64_t;

struct PrimeFactor {
  Int prime;
  int exponent;

  friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

/// Prime factorization, ascending by prime. Empty for 1.
using Factorization = std::vector<PrimeFactor>;

struct PrimePower {
  Int base;
  int exponent;
  Int value;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
  friend auto operator<=>(const PrimePower& a, const PrimePower& b) {
    if (auto c = a.base <=> b.base; c != 0) return c;
    return a.exponent <=> b.exponent;
  }
};

Int checked_mul(Int a, Int b);
Int checked_add(Int a, Int b);
Int checked_pow(Int base, int exponent);
Int gcd(Int a, Int b);
Int checked_lcm(Int a, Int b);

bool is_prime(Int n);

/// Trial-division factorization of 1 <= n <= 2^63 - 1. Throws on n < 1.
Factorization factorize(Int n);

/// Product of p^e over the factorization.
Int expand(const Factorization& f);

/// Union of the prime supports of all elements, ascending.
std::vector<Int> prime_spectrum(std::span<const Int> values);

/// Least a >= 1 with r^a = 1 (mod f). nullopt when gcd(r, f) > 1; 1 for f = 1.
std::optional<Int> multiplicative_order(Int r, Int f);

/// Every p^k (k >= 1) dividing n, ordered by prime then exponent.
std::vector<PrimePower> prime_power_divisors(Int n);

/// The unique (r, b) with n = r^b, or nullopt. Throws for n < 2.
std::optional<PrimePower> is_prime_power(Int n);

/// Least common multiple of a nonempty list of positive integers.
Int lcm_of(std::span<const Int> values);

/// Every positive divisor of n, ascending.
std::vector<Int> divisors(Int n);

}  // namespace huppert
