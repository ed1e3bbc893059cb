#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "molekul/atom_system.hpp"
#include "molekul/numerical_semigroup.hpp"
#include "molekul/primes.hpp"
#include "molekul/rational.hpp"

namespace molekul {

/// A finitely generated Puiseux monoid. Multiplying by `scale` maps it
/// isomorphically onto a numerical semigroup, `reduced`, which is built when
/// the scaled atoms are small enough to tabulate. Factorization queries that
/// do not need the full semigroup run on the rational atom system instead.
class PuiseuxMonoidFG {
 public:
  static PuiseuxMonoidFG from_generators(std::vector<Rational> gens) {
    if (gens.empty()) throw Error(ErrorKind::EmptyInput, "no generators given");
    for (const auto& g : gens) {
      if (g.is_zero()) throw Error(ErrorKind::OutOfRange, "generators must be positive");
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

    BigInt l = 1;
    for (const auto& g : gens) l = lcm(l, g.denominator());
    std::vector<BigInt> scaled;
    BigInt common = 0;
    for (const auto& g : gens) {
      scaled.push_back(g.numerator() * (l / g.denominator()));
      common = gcd(common, scaled.back());
    }
    for (auto& s : scaled) s /= common;

    PuiseuxMonoidFG p;
    p.generators_ = gens;
    p.scale_ = Rational(l, common);

    bool tabulable = fits_i64(scaled.back()) &&
                     scaled.front() <= BigInt(NumericalSemigroup::kMaxMultiplicity);
    if (tabulable) {
      std::vector<std::int64_t> ints;
      for (const auto& s : scaled) ints.push_back(s.convert_to<std::int64_t>());
      p.reduced_ = NumericalSemigroup::from_generators(ints);
      for (auto a : p.reduced_->atoms()) {
        p.scaled_atoms_.emplace_back(a);
        p.atoms_.push_back(Rational(BigInt(a)) / p.scale_);
      }
    } else {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        std::vector<Rational> smaller(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(i));
        if (!smaller.empty() && AtomSystem(smaller).has_factorization(gens[i])) continue;
        p.atoms_.push_back(gens[i]);
        p.scaled_atoms_.push_back(scaled[i]);
      }
    }
    p.system_ = AtomSystem(p.atoms_);
    return p;
  }

  const std::vector<Rational>& generators() const noexcept { return generators_; }
  /// Ascending.
  const std::vector<Rational>& atoms() const noexcept { return atoms_; }
  const Rational& scale() const noexcept { return scale_; }
  const std::vector<BigInt>& scaled_atoms() const noexcept { return scaled_atoms_; }
  const std::optional<NumericalSemigroup>& reduced() const noexcept { return reduced_; }
  const AtomSystem& atom_system() const noexcept { return system_; }

  const NumericalSemigroup& require_reduced() const {
    if (!reduced_) {
      throw Error(ErrorKind::LimitExceeded,
                  "reduced numerical semigroup too large to tabulate (scale " +
                      scale_.to_string() + ")");
    }
    return *reduced_;
  }

  std::string to_string() const {
    std::string out = "<";
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (i) out += ",";
      out += atoms_[i].to_string();
    }
    return out + ">";
  }

 private:
  PuiseuxMonoidFG() = default;

  std::vector<Rational> generators_;
  std::vector<Rational> atoms_;
  Rational scale_;
  std::vector<BigInt> scaled_atoms_;
  std::optional<NumericalSemigroup> reduced_;
  AtomSystem system_{std::vector<Rational>{}};
};

inline PuiseuxMonoidFG fg_from_generators(std::vector<Rational> gens) {
  return PuiseuxMonoidFG::from_generators(std::move(gens));
}

inline bool contains_fg(const PuiseuxMonoidFG& p, const Rational& x) {
  if (x.is_zero()) return true;
  Rational scaled = x * p.scale();
  if (!scaled.is_integer()) return false;
  if (p.reduced()) return p.reduced()->contains(scaled.numerator());
  return p.atom_system().has_factorization(x);
}

/// Z(x) as coefficient tuples over the ascending atom list.
inline std::vector<RationalFactorization> fg_factorizations(const PuiseuxMonoidFG& p,
                                                            const Rational& x,
                                                            const Limits& limits = {}) {
  return p.atom_system().factorizations(x, limits);
}

inline std::size_t fg_factorization_count(const PuiseuxMonoidFG& p, const Rational& x,
                                          std::size_t cap) {
  return p.atom_system().count(x, cap);
}

/// M(P) as the preimage of M(reduced) under scaling. A single atom gives
/// infinitely many molecules.
inline std::vector<Rational> molecules_fg(const PuiseuxMonoidFG& p, const Limits& limits = {}) {
  if (p.atoms().size() == 1) {
    throw Error(ErrorKind::InfiniteResult,
                "single atom " + p.atoms()[0].to_string() + ": every multiple is a molecule");
  }
  std::vector<Rational> out;
  for (auto m : molecules(p.require_reduced(), MoleculeMode::enumerate, limits)) {
    out.push_back(Rational(BigInt(m)) / p.scale());
  }
  return out;
}

/// true iff q P is contained in other.
inline bool hom_valid(const PuiseuxMonoidFG& p, const PuiseuxMonoidFG& other, const Rational& q) {
  return std::all_of(p.atoms().begin(), p.atoms().end(),
                     [&](const Rational& a) { return contains_fg(other, q * a); });
}

/// The q with q P = other, if the two monoids are isomorphic. Every
/// homomorphism is multiplication by a rational, so isomorphic monoids share
/// their gcd-normalized integer images.
inline std::optional<Rational> scaling_analysis(const PuiseuxMonoidFG& p,
                                                const PuiseuxMonoidFG& other) {
  if (p.scaled_atoms() != other.scaled_atoms()) return std::nullopt;
  return p.scale() / other.scale();
}

/// { a + b : a <= b atoms }, ascending.
inline std::vector<Rational> two_atom_sums(const PuiseuxMonoidFG& p) {
  std::set<Rational> sums;
  const auto& atoms = p.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i; j < atoms.size(); ++j) sums.insert(atoms[i] + atoms[j]);
  }
  return {sums.begin(), sums.end()};
}

/// A prime set S for the staged construction: either every prime, or an
/// explicit list (stored ascending).
class PrimePool {
 public:
  static PrimePool all_primes() { return PrimePool(); }

  static PrimePool of(std::vector<std::uint64_t> primes) {
    std::sort(primes.begin(), primes.end());
    if (std::adjacent_find(primes.begin(), primes.end()) != primes.end()) {
      throw Error(ErrorKind::OutOfRange, "prime pool has repeated entries");
    }
    for (auto p : primes) {
      if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    }
    PrimePool pool;
    pool.all_ = false;
    pool.primes_ = std::move(primes);
    return pool;
  }

  bool is_all() const noexcept { return all_; }
  bool contains(std::uint64_t p) const {
    return all_ ? is_prime(p) : std::binary_search(primes_.begin(), primes_.end(), p);
  }

  /// The `count` smallest members not in `used`, ascending.
  std::vector<std::uint64_t> smallest_unused(const std::set<std::uint64_t>& used,
                                             std::size_t count) const {
    std::vector<std::uint64_t> out;
    if (all_) {
      std::uint64_t p = 2;
      while (out.size() < count) {
        if (!used.contains(p)) out.push_back(p);
        p = next_prime(p);
      }
      return out;
    }
    for (auto p : primes_) {
      if (out.size() == count) break;
      if (!used.contains(p)) out.push_back(p);
    }
    if (out.size() < count) {
      throw Error(ErrorKind::PrimesExhausted, "need " + std::to_string(count) +
                                                  " unused primes, only " +
                                                  std::to_string(out.size()) + " left");
    }
    return out;
  }

 private:
  PrimePool() = default;
  bool all_ = true;
  std::vector<std::uint64_t> primes_;
};

/// One stage P_k of the construction whose limit satisfies M(P) = A(P).
struct Stage {
  PuiseuxMonoidFG monoid;
  std::vector<Rational> new_generators;   // r_i / p'_i added at this stage
  std::vector<std::uint64_t> support;     // D_S(P_k), ascending
};

namespace detail {

inline std::vector<std::uint64_t> pool_support(const PrimePool& pool,
                                               const std::vector<Rational>& gens) {
  std::set<std::uint64_t> support;
  for (const auto& g : gens) {
    for (auto p : prime_divisors(g.denominator())) {
      if (pool.contains(p)) support.insert(p);
    }
  }
  return {support.begin(), support.end()};
}

}  // namespace detail

/// P_1 = <1/p_1>; P_{j+1} adds r_i / p'_i where r_1 < r_2 < ... are the
/// two-atom sums of P_j and p'_1 < p'_2 < ... the smallest primes of the pool
/// not yet dividing a denominator. Returns P_1, ..., P_k.
inline std::vector<Stage> stable_stages(const PrimePool& pool, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::OutOfRange, "stage index starts at 1");
  std::vector<Stage> stages;
  auto first = pool.smallest_unused({}, 1);
  std::vector<Rational> gens{Rational(BigInt(1), BigInt(first[0]))};
  stages.push_back(Stage{fg_from_generators(gens), gens, detail::pool_support(pool, gens)});
  while (stages.size() < k) {
    const Stage& prev = stages.back();
    auto sums = two_atom_sums(prev.monoid);
    std::set<std::uint64_t> used(prev.support.begin(), prev.support.end());
    auto fresh = pool.smallest_unused(used, sums.size());
    std::vector<Rational> added;
    for (std::size_t i = 0; i < sums.size(); ++i) {
      added.push_back(sums[i] / Rational(BigInt(fresh[i])));
    }
    std::vector<Rational> next = prev.monoid.atoms();
    next.insert(next.end(), added.begin(), added.end());
    auto support = detail::pool_support(pool, next);
    stages.push_back(Stage{fg_from_generators(next), added, std::move(support)});
  }
  return stages;
}

inline Stage stable_stage(const PrimePool& pool, std::size_t k) {
  return stable_stages(pool, k).back();
}

/// A monoid presented only by an externally certified finite atom set; its
/// full generating set may be infinite and non-atomic.
class DeclaredAtomMonoid {
 public:
  DeclaredAtomMonoid(std::vector<Rational> atoms, std::string provenance)
      : atoms_(std::move(atoms)), provenance_(std::move(provenance)) {
    if (atoms_.empty()) throw Error(ErrorKind::EmptyInput, "no atoms declared");
    if (provenance_.empty()) throw Error(ErrorKind::InvalidSpec, "provenance note required");
    std::sort(atoms_.begin(), atoms_.end());
    atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
    AtomSystem system(atoms_);
    for (const auto& a : atoms_) {
      for (const auto& b : atoms_) {
        if (a < b && system.has_factorization(b - a)) {
          throw Error(ErrorKind::InvalidSpec,
                      a.to_string() + " divides " + b.to_string() + " within the declared atoms");
        }
      }
    }
  }

  const std::vector<Rational>& atoms() const noexcept { return atoms_; }
  const std::string& provenance() const noexcept { return provenance_; }

 private:
  std::vector<Rational> atoms_;
  std::string provenance_;
};

struct DeclaredCount {
  std::size_t count = 0;
  std::vector<RationalFactorization> witnesses;  // all factorizations, sorted
};

/// Exact |Z(x)| over the declared atoms; zero means x has no factorization.
inline DeclaredCount molecules_over_declared_atoms(const DeclaredAtomMonoid& d, const Rational& x,
                                                   const Limits& limits = {}) {
  DeclaredCount out;
  out.witnesses = AtomSystem(d.atoms()).factorizations(x, limits);
  out.count = out.witnesses.size();
  return out;
}

/// <2/5, 3/5, 1/2^n : n >= 1> with its atom set {2/5, 3/5}.
inline DeclaredAtomMonoid example_declared_two_fifths() {
  return DeclaredAtomMonoid(
      {Rational(BigInt(2), BigInt(5)), Rational(BigInt(3), BigInt(5))},
      "generators 2/5, 3/5 and 1/2^n (n >= 1); each 1/2^n = 2 * 1/2^(n+1) is not an atom, and "
      "5-adic valuation shows 2/5 and 3/5 are not sums involving dyadic elements");
}

}  // namespace molekul
