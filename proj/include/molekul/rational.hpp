#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "molekul/integer.hpp"
#include "molekul/primes.hpp"

namespace molekul {

/// Exact nonnegative rational kept in lowest terms; zero is 0/1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}

  /// Throws ZeroDenominator for den == 0 and NegativeInput for a negative
  /// numerator or denominator.
  Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw Error(ErrorKind::ZeroDenominator, "denominator is zero");
    if (num_ < 0 || den_ < 0) {
      throw Error(ErrorKind::NegativeInput,
                  num_.str() + "/" + den_.str() + " is negative");
    }
    normalize();
  }

  template <std::integral T>
  explicit Rational(T value) : Rational(BigInt(value), BigInt(1)) {}

  explicit Rational(const BigInt& value) : Rational(value, BigInt(1)) {}

  const BigInt& numerator() const noexcept { return num_; }
  const BigInt& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return den_ == 1; }
  BigInt floor() const { return num_ / den_; }

  Rational& operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
  }

  /// Throws NegativeInput if the difference would be negative; use
  /// checked_sub when a negative difference is an expected outcome.
  Rational& operator-=(const Rational& o) {
    BigInt n = num_ * o.den_ - o.num_ * den_;
    if (n < 0) {
      throw Error(ErrorKind::NegativeInput,
                  to_string() + " - " + o.to_string() + " is negative");
    }
    num_ = std::move(n);
    den_ *= o.den_;
    normalize();
    return *this;
  }

  Rational& operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
  }

  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorKind::ZeroDenominator, "division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend Rational operator*(const BigInt& k, Rational a) { return a *= Rational(k); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    BigInt lhs = a.num_ * b.den_;
    BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "a/b", or "a" when the denominator is 1.
  std::string to_string() const {
    return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str();
  }

  /// Accepts "a/b" and "a" (read as a/1).
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_bigint(trim(text)), BigInt(1));
    return Rational(parse_bigint(trim(text.substr(0, slash))),
                    parse_bigint(trim(text.substr(slash + 1))));
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& q) {
    return os << q.to_string();
  }

 private:
  static std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  }

  void normalize() {
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    BigInt g = gcd(num_, den_);
    if (g != 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_;
  BigInt den_;
};

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  return Rational(num, den);
}

/// a - b when it stays nonnegative.
inline std::optional<Rational> checked_sub(const Rational& a, const Rational& b) {
  if (a < b) return std::nullopt;
  return a - b;
}

/// Exponent of a prime in a rational; infinite exactly for zero.
class Valuation {
 public:
  static Valuation infinity() { return Valuation(); }
  static Valuation finite(std::int64_t v) { return Valuation(v); }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  std::int64_t value() const {
    if (!value_) throw Error(ErrorKind::OutOfRange, "valuation is infinite");
    return *value_;
  }

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.is_infinite() || b.is_infinite()) {
      return a.is_infinite() == b.is_infinite()
                 ? std::strong_ordering::equal
                 : (a.is_infinite() ? std::strong_ordering::greater
                                    : std::strong_ordering::less);
    }
    return *a.value_ <=> *b.value_;
  }

  std::string to_string() const {
    return value_ ? std::to_string(*value_) : std::string("inf");
  }

 private:
  Valuation() = default;
  explicit Valuation(std::int64_t v) : value_(v) {}
  std::optional<std::int64_t> value_;
};

inline Valuation padic_valuation(std::uint64_t p, const Rational& q) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (q.is_zero()) return Valuation::infinity();
  BigInt bp(p);
  return Valuation::finite(multiplicity_of(bp, q.numerator()) -
                           multiplicity_of(bp, q.denominator()));
}

/// Comma-separated list of rationals, e.g. "1/2,3/4".
inline std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    out.push_back(Rational::parse(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace molekul
