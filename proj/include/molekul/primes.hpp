#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "molekul/integer.hpp"

namespace molekul {

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

inline bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
  std::uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace detail

// Deterministic for every 64-bit input: the first twelve prime bases are a
// known-complete witness set below 3.3e24.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kBases) {
    if (detail::miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

inline bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  return is_prime(to_u64(n));
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

// The n-th prime, 1-indexed (nth_prime(1) == 2).
inline std::uint64_t nth_prime(std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::OutOfRange, "prime index starts at 1");
  std::uint64_t limit = 32;
  while (true) {
    auto primes = primes_up_to(limit);
    if (primes.size() >= n) return primes[n - 1];
    limit *= 2;
  }
}

inline std::vector<std::uint64_t> first_primes(std::size_t count) {
  if (count == 0) return {};
  std::uint64_t limit = 32;
  while (true) {
    auto primes = primes_up_to(limit);
    if (primes.size() >= count) {
      primes.resize(count);
      return primes;
    }
    limit *= 2;
  }
}

inline std::uint64_t next_prime(std::uint64_t n) {
  std::uint64_t candidate = n + 1;
  while (!is_prime(candidate)) ++candidate;
  return candidate;
}

namespace detail {

inline std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    auto f = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(std::uint64_t n, std::map<std::uint64_t, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % p == 0) {
      ++out[p];
      factor_into(n / p, out);
      return;
    }
  }
  std::uint64_t d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

// Prime factorization of a positive integer as (prime, exponent) ascending.
// Inputs above 2^64 are accepted when trial division by primes below 10^5
// leaves a cofactor that fits in 64 bits.
inline std::vector<std::pair<std::uint64_t, int>> factorize(const BigInt& n) {
  if (n < 1) throw Error(ErrorKind::OutOfRange, "factorize expects a positive integer");
  std::map<std::uint64_t, int> out;
  BigInt rest = n;
  if (!fits_u64(rest)) {
    static const std::vector<std::uint64_t> small = primes_up_to(100'000);
    for (std::uint64_t p : small) {
      while (rest % p == 0) {
        rest /= p;
        ++out[p];
      }
      if (fits_u64(rest)) break;
    }
  }
  detail::factor_into(to_u64(rest), out);
  return {out.begin(), out.end()};
}

inline std::vector<std::uint64_t> prime_divisors(const BigInt& n) {
  std::vector<std::uint64_t> result;
  for (auto [p, e] : factorize(n)) result.push_back(p);
  return result;
}

}  // namespace molekul
