#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "molekul/error.hpp"

namespace molekul {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd(a, b) * b;
}

// Least nonnegative residue, also for negative a.
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

// Inverse of a modulo m via extended Euclid; nullopt when gcd(a, m) != 1.
inline std::optional<BigInt> mod_inverse(const BigInt& a, const BigInt& m) {
  if (m == 1) return BigInt(0);
  BigInt old_r = mod_floor(a, m), r = m;
  BigInt old_s = 1, s = 0;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) return std::nullopt;
  return mod_floor(old_s, m);
}

inline bool fits_u64(const BigInt& v) {
  return v >= 0 && v <= BigInt(std::numeric_limits<std::uint64_t>::max());
}

inline bool fits_i64(const BigInt& v) {
  return v >= BigInt(std::numeric_limits<std::int64_t>::min()) &&
         v <= BigInt(std::numeric_limits<std::int64_t>::max());
}

inline std::uint64_t to_u64(const BigInt& v) {
  if (!fits_u64(v)) {
    throw Error(ErrorKind::OutOfRange, v.str() + " does not fit in 64 bits");
  }
  return v.convert_to<std::uint64_t>();
}

inline std::int64_t to_i64(const BigInt& v) {
  if (!fits_i64(v)) {
    throw Error(ErrorKind::OutOfRange, v.str() + " does not fit in 64 bits");
  }
  return v.convert_to<std::int64_t>();
}

// Exponent of p in n (n > 0, p > 1).
inline std::int64_t multiplicity_of(const BigInt& p, BigInt n) {
  std::int64_t e = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

inline BigInt parse_bigint(std::string_view text) {
  if (text.empty()) throw Error(ErrorKind::ParseError, "empty integer");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) {
    throw Error(ErrorKind::ParseError, "malformed integer '" + std::string(text) + "'");
  }
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw Error(ErrorKind::ParseError, "malformed integer '" + std::string(text) + "'");
    }
  }
  BigInt v(std::string(text.substr(start)));
  return text[0] == '-' ? BigInt(-v) : v;
}

}  // namespace molekul
