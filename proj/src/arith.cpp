#include "huppert/arith.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace huppert {

Int checked_mul(Int a, Int b) {
  Int out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("integer overflow in " + std::to_string(a) + " * " + std::to_string(b));
  }
  return out;
}

Int checked_add(Int a, Int b) {
  Int out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("integer overflow in " + std::to_string(a) + " + " + std::to_string(b));
  }
  return out;
}

Int checked_pow(Int base, int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  Int out = 1;
  for (int i = 0; i < exponent; ++i) out = checked_mul(out, base);
  return out;
}

Int gcd(Int a, Int b) { return std::gcd(a, b); }

Int checked_lcm(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / gcd(a, b), b);
}

bool is_prime(Int n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (Int d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Factorization factorize(Int n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive, got " + std::to_string(n));
  Factorization out;
  for (Int p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

Int expand(const Factorization& f) {
  Int out = 1;
  for (const auto& [p, e] : f) out = checked_mul(out, checked_pow(p, e));
  return out;
}

std::vector<Int> prime_spectrum(std::span<const Int> values) {
  std::set<Int> primes;
  for (Int v : values) {
    for (const auto& pf : factorize(v)) primes.insert(pf.prime);
  }
  return {primes.begin(), primes.end()};
}

std::optional<Int> multiplicative_order(Int r, Int f) {
  if (f < 1) throw std::invalid_argument("multiplicative_order: modulus must be positive");
  if (f == 1) return 1;
  if (gcd(r, f) != 1) return std::nullopt;
  __extension__ using Wide = __int128;
  const auto base = static_cast<Wide>(r % f);
  Wide acc = base;
  // The order divides phi(f) < f.
  for (Int a = 1; a <= f; ++a) {
    if (acc == 1) return a;
    acc = (acc * base) % f;
  }
  return std::nullopt;
}

std::vector<PrimePower> prime_power_divisors(Int n) {
  if (n < 1) throw std::invalid_argument("prime_power_divisors: n must be positive");
  std::vector<PrimePower> out;
  for (const auto& [p, e] : factorize(n)) {
    Int value = 1;
    for (int k = 1; k <= e; ++k) {
      value *= p;
      out.push_back({p, k, value});
    }
  }
  return out;
}

std::optional<PrimePower> is_prime_power(Int n) {
  if (n < 2) throw std::invalid_argument("is_prime_power: n must be at least 2");
  auto f = factorize(n);
  if (f.size() != 1) return std::nullopt;
  return PrimePower{f.front().prime, f.front().exponent, n};
}

Int lcm_of(std::span<const Int> values) {
  if (values.empty()) throw std::invalid_argument("lcm_of: empty input");
  Int out = 1;
  for (Int v : values) {
    if (v < 1) throw std::invalid_argument("lcm_of: values must be positive");
    out = checked_lcm(out, v);
  }
  return out;
}

std::vector<Int> divisors(Int n) {
  if (n < 1) throw std::invalid_argument("divisors: n must be positive");
  std::vector<Int> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base_count = out.size();
    Int pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base_count; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace huppert
