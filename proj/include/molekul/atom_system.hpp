#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "molekul/coin_search.hpp"
#include "molekul/error.hpp"
#include "molekul/rational.hpp"

namespace molekul {

/// Coefficients of a factorization over a list of rational atoms.
using RationalFactorization = std::vector<BigInt>;

inline std::string to_string(const RationalFactorization& z) {
  std::string out = "(";
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i) out += ",";
    out += z[i].str();
  }
  return out + ")";
}

/// Factorization search over finitely many positive rationals, exact at any
/// size. Atoms are scaled by the lcm of their denominators; the search visits
/// atoms with the largest denominators first so their prime constraints fix
/// coefficients early.
class AtomSystem {
 public:
  explicit AtomSystem(std::vector<Rational> atoms) : atoms_(std::move(atoms)) {
    common_denominator_ = 1;
    for (const auto& a : atoms_) {
      if (a.is_zero()) throw Error(ErrorKind::OutOfRange, "atoms must be positive");
      common_denominator_ = lcm(common_denominator_, a.denominator());
    }
    order_.resize(atoms_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t i, std::size_t j) {
      if (atoms_[i].denominator() != atoms_[j].denominator()) {
        return atoms_[i].denominator() > atoms_[j].denominator();
      }
      return atoms_[i] < atoms_[j];
    });
    std::vector<BigInt> weights;
    weights.reserve(atoms_.size());
    for (std::size_t i : order_) {
      weights.push_back(atoms_[i].numerator() * (common_denominator_ / atoms_[i].denominator()));
    }
    search_ = CoinSearch<BigInt>(std::move(weights));
  }

  const std::vector<Rational>& atoms() const noexcept { return atoms_; }

  /// visit(const RationalFactorization&) gets coefficients in atom order and
  /// returns false to stop.
  template <class Visit>
  void for_each(const Rational& x, Visit&& visit) const {
    BigInt scaled = x.numerator() * common_denominator_;
    if (scaled % x.denominator() != 0) return;
    scaled /= x.denominator();
    RationalFactorization canonical(atoms_.size());
    search_.for_each(scaled, [&](const std::vector<BigInt>& permuted) {
      for (std::size_t k = 0; k < order_.size(); ++k) canonical[order_[k]] = permuted[k];
      return visit(static_cast<const RationalFactorization&>(canonical));
    });
  }

  std::size_t count(const Rational& x, std::size_t cap) const {
    std::size_t n = 0;
    for_each(x, [&](const RationalFactorization&) { return ++n < cap; });
    return n;
  }

  bool has_factorization(const Rational& x) const { return count(x, 1) == 1; }

  /// All factorizations, sorted lexicographically.
  std::vector<RationalFactorization> factorizations(const Rational& x,
                                                    const Limits& limits = {}) const {
    std::vector<RationalFactorization> out;
    for_each(x, [&](const RationalFactorization& z) {
      if (out.size() >= limits.max_factorizations) {
        throw Error(ErrorKind::LimitExceeded, "more than " +
                                                  std::to_string(limits.max_factorizations) +
                                                  " factorizations of " + x.to_string());
      }
      out.push_back(z);
      return true;
    });
    std::sort(out.begin(), out.end());
    return out;
  }

  Rational evaluate(const RationalFactorization& z) const {
    if (z.size() != atoms_.size()) {
      throw Error(ErrorKind::ArityMismatch, "factorization " + to_string(z) + " has wrong arity");
    }
    Rational sum;
    for (std::size_t i = 0; i < z.size(); ++i) sum += z[i] * atoms_[i];
    return sum;
  }

 private:
  std::vector<Rational> atoms_;
  BigInt common_denominator_;
  std::vector<std::size_t> order_;
  CoinSearch<BigInt> search_{std::vector<BigInt>{}};
};

}  // namespace molekul
