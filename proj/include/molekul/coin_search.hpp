#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "molekul/integer.hpp"

namespace molekul {

namespace detail {

inline std::int64_t gcd_of(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
inline BigInt gcd_of(const BigInt& a, const BigInt& b) { return gcd(a, b); }

inline std::int64_t mul_mod_of(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}
inline BigInt mul_mod_of(const BigInt& a, const BigInt& b, const BigInt& m) {
  return a * b % m;
}

inline std::int64_t inverse_of(std::int64_t a, std::int64_t m) {
  auto inv = mod_inverse(BigInt(a), BigInt(m));
  return inv ? inv->convert_to<std::int64_t>() : 0;
}
inline BigInt inverse_of(const BigInt& a, const BigInt& m) {
  auto inv = mod_inverse(a, m);
  return inv ? *inv : BigInt(0);
}

}  // namespace detail

/// Enumerates nonnegative solutions of sum c_i * w_i = target for fixed
/// positive weights. Solutions are visited in ascending lexicographic order
/// of the coefficient tuple.
///
/// At level i the remaining amount must stay divisible by g_{i+1}, the gcd of
/// the weights not yet assigned. That pins c_i to a single residue class
/// modulo g_{i+1} / gcd(w_i, g_{i+1}), so only one candidate per class is
/// tried. For weights coming from rationals with private prime denominators
/// this is exactly the p-adic constraint on the coefficient.
template <class Int>
class CoinSearch {
 public:
  explicit CoinSearch(std::vector<Int> weights) : weights_(std::move(weights)) {
    const std::size_t n = weights_.size();
    suffix_gcd_.assign(n + 1, Int(0));
    for (std::size_t i = n; i-- > 0;) {
      suffix_gcd_[i] = detail::gcd_of(weights_[i], suffix_gcd_[i + 1]);
    }
    step_.assign(n, Int(0));
    inverse_.assign(n, Int(0));
    for (std::size_t i = 0; i + 1 < n; ++i) {
      Int h = suffix_gcd_[i];
      step_[i] = suffix_gcd_[i + 1] / h;
      inverse_[i] = step_[i] == 1 ? Int(0) : detail::inverse_of(Int(weights_[i] / h), step_[i]);
    }
  }

  std::size_t size() const noexcept { return weights_.size(); }
  const std::vector<Int>& weights() const noexcept { return weights_; }

  /// visit(const std::vector<Int>&) returns false to stop early.
  template <class Visit>
  void for_each(const Int& target, Visit&& visit) const {
    if (target < 0) return;
    if (weights_.empty()) {
      if (target == 0) {
        std::vector<Int> none;
        visit(none);
      }
      return;
    }
    if (target % suffix_gcd_[0] != 0) return;
    std::vector<Int> coeffs(weights_.size(), Int(0));
    descend(0, target, coeffs, visit);
  }

  /// Number of solutions, stopping once `cap` have been seen.
  std::size_t count(const Int& target, std::size_t cap) const {
    std::size_t n = 0;
    for_each(target, [&](const std::vector<Int>&) { return ++n < cap; });
    return n;
  }

  bool has_solution(const Int& target) const { return count(target, 1) == 1; }

 private:
  template <class Visit>
  bool descend(std::size_t i, const Int& remaining, std::vector<Int>& coeffs,
               Visit& visit) const {
    const Int& w = weights_[i];
    if (i + 1 == weights_.size()) {
      if (remaining % w != 0) return true;
      coeffs[i] = remaining / w;
      bool go_on = visit(static_cast<const std::vector<Int>&>(coeffs));
      coeffs[i] = 0;
      return go_on;
    }
    const Int& m = step_[i];
    Int c = 0;
    if (m != 1) {
      Int h = suffix_gcd_[i];
      Int r = (remaining / h) % m;
      c = detail::mul_mod_of(r, inverse_[i], m);
    }
    Int used = c * w;
    const Int stride = m * w;
    while (used <= remaining) {
      coeffs[i] = c;
      if (!descend(i + 1, remaining - used, coeffs, visit)) {
        coeffs[i] = 0;
        return false;
      }
      c += m;
      used += stride;
    }
    coeffs[i] = 0;
    return true;
  }

  std::vector<Int> weights_;
  std::vector<Int> suffix_gcd_;
  std::vector<Int> step_;
  std::vector<Int> inverse_;
};

}  // namespace molekul
