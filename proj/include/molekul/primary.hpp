#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "molekul/atom_system.hpp"
#include "molekul/coin_search.hpp"
#include "molekul/numerical_semigroup.hpp"
#include "molekul/prime_set.hpp"
#include "molekul/primes.hpp"
#include "molekul/rational.hpp"

namespace molekul {

/// Atoms numerator/p for every prime p of the descriptor.
struct AtomFamily {
  BigInt numerator;
  PrimeSetDescriptor primes;

  bool is_infinite() const { return primes.is_infinite(); }
};

/// Coefficient of the atom at each prime; absent primes have coefficient 0.
using PrimaryFactorization = std::map<std::uint64_t, BigInt>;

/// A primary Puiseux monoid given symbolically by finitely many atom
/// families with pairwise disjoint prime sets.
class PrimaryMonoidSpec {
 public:
  PrimaryMonoidSpec() = default;

  explicit PrimaryMonoidSpec(std::vector<AtomFamily> families) : families_(std::move(families)) {
    for (std::size_t i = 0; i < families_.size(); ++i) {
      const auto& f = families_[i];
      if (f.numerator < 1) {
        throw Error(ErrorKind::InvalidSpec, "family " + std::to_string(i) + ": numerator must be positive");
      }
      for (auto q : prime_divisors(f.numerator)) {
        if (f.primes.contains(q)) {
          throw Error(ErrorKind::InvalidSpec, "family " + std::to_string(i) + ": prime " +
                                                  std::to_string(q) + " divides numerator " +
                                                  f.numerator.str());
        }
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (auto p = common_prime(families_[j].primes, f.primes)) {
          throw Error(ErrorKind::InvalidSpec, "families " + std::to_string(j) + " and " +
                                                  std::to_string(i) + " overlap at prime " +
                                                  std::to_string(*p));
        }
      }
    }
    std::vector<std::int64_t> numerators;
    for (const auto& f : families_) {
      if (f.primes.is_empty()) continue;
      numerators.push_back(to_i64(f.numerator));
      cone_gcd_ = std::gcd(cone_gcd_, numerators.back());
    }
    if (!numerators.empty()) {
      for (auto& n : numerators) n /= cone_gcd_;
      cone_ = NumericalSemigroup::from_generators(numerators);
    }
  }

  const std::vector<AtomFamily>& families() const noexcept { return families_; }

  std::optional<std::size_t> family_of(std::uint64_t p) const {
    for (std::size_t i = 0; i < families_.size(); ++i) {
      if (families_[i].primes.contains(p)) return i;
    }
    return std::nullopt;
  }

  std::optional<Rational> atom_at(std::uint64_t p) const {
    auto f = family_of(p);
    if (!f) return std::nullopt;
    return Rational(families_[*f].numerator, BigInt(p));
  }

  /// Whether y is a nonnegative combination of the numerators of nonempty
  /// families: p copies of numerator/p add exactly the numerator.
  bool cone_contains(const BigInt& y) const {
    if (y == 0) return true;
    if (y < 0 || !cone_) return false;
    if (y % cone_gcd_ != 0) return false;
    return cone_->contains(BigInt(y / cone_gcd_));
  }

  /// One way to write y as sum of count * numerator(family), or nullopt.
  std::optional<std::vector<std::pair<std::size_t, BigInt>>> cone_decompose(const BigInt& y) const {
    std::vector<std::pair<std::size_t, BigInt>> out;
    if (y == 0) return out;
    if (!cone_contains(y)) return std::nullopt;
    const auto& atoms = cone_->atoms();
    BigInt rest = y / cone_gcd_;
    std::vector<BigInt> counts(atoms.size(), 0);
    // Strip multiplicity-sized chunks while staying above the Frobenius number.
    BigInt slack = rest - cone_->frobenius() - 1 - atoms.back();
    if (slack > 0) {
      BigInt chunks = slack / atoms.front();
      counts[0] += chunks;
      rest -= chunks * atoms.front();
    }
    CoinSearch<std::int64_t>(atoms).for_each(rest.convert_to<std::int64_t>(),
                                             [&](const std::vector<std::int64_t>& c) {
                                               for (std::size_t i = 0; i < c.size(); ++i) counts[i] += c[i];
                                               return false;
                                             });
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (counts[i] == 0) continue;
      BigInt numerator = BigInt(atoms[i]) * cone_gcd_;
      for (std::size_t f = 0; f < families_.size(); ++f) {
        if (families_[f].numerator == numerator && !families_[f].primes.is_empty()) {
          out.emplace_back(f, counts[i]);
          break;
        }
      }
    }
    return out;
  }

  std::string to_string() const {
    std::string out;
    for (const auto& f : families_) {
      out += "numerator=" + f.numerator.str() + " primes=" + f.primes.to_string() + "\n";
    }
    return out;
  }

  /// One family per line: `numerator=<int> primes=<descriptor>`. Blank lines
  /// and lines starting with '#' are skipped.
  static PrimaryMonoidSpec parse(std::string_view text) {
    std::vector<AtomFamily> families;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      std::istringstream fields(line);
      std::string a, b, extra;
      fields >> a >> b;
      if (a.rfind("numerator=", 0) != 0 || b.rfind("primes=", 0) != 0 || (fields >> extra)) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) +
                                               ": expected 'numerator=<int> primes=<set>'");
      }
      families.push_back(AtomFamily{parse_bigint(a.substr(10)),
                                    PrimeSetDescriptor::parse(b.substr(7))});
    }
    return PrimaryMonoidSpec(std::move(families));
  }

 private:
  std::vector<AtomFamily> families_;
  std::int64_t cone_gcd_ = 0;
  std::optional<NumericalSemigroup> cone_;
};

/// E_S: the atoms 1/p for p in S.
inline PrimaryMonoidSpec elementary_spec(const PrimeSetDescriptor& primes) {
  return PrimaryMonoidSpec({AtomFamily{1, primes}});
}

/// <1/2, (p^2 - 1)/p : p among the first `depth` odd primes>. Every numerator
/// occurs once, so every atom is unstable.
inline PrimaryMonoidSpec odd_square_spec(std::size_t depth) {
  std::vector<AtomFamily> families{AtomFamily{1, PrimeSetDescriptor::list({2})}};
  auto primes = first_primes(depth + 1);
  for (std::size_t i = 1; i < primes.size(); ++i) {
    BigInt p(primes[i]);
    families.push_back(AtomFamily{p * p - 1, PrimeSetDescriptor::list({primes[i]})});
  }
  return PrimaryMonoidSpec(std::move(families));
}

inline Rational evaluate(const PrimaryMonoidSpec& spec, const PrimaryFactorization& z) {
  Rational sum;
  for (const auto& [p, c] : z) {
    auto atom = spec.atom_at(p);
    if (!atom) throw Error(ErrorKind::NotAnAtom, "no atom at prime " + std::to_string(p));
    sum += c * *atom;
  }
  return sum;
}

/// "2*(1/2) + 1*(8/3)"; "0" for the empty factorization.
inline std::string describe(const PrimaryMonoidSpec& spec, const PrimaryFactorization& z) {
  std::string out;
  for (const auto& [p, c] : z) {
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    out += c.str() + "*(" + spec.atom_at(p)->to_string() + ")";
  }
  return out.empty() ? "0" : out;
}

enum class MembershipFailure { none, repeated_prime, unknown_prime, negative_remainder, outside_cone };

constexpr std::string_view to_string(MembershipFailure f) {
  switch (f) {
    case MembershipFailure::none: return "none";
    case MembershipFailure::repeated_prime: return "repeated_prime";
    case MembershipFailure::unknown_prime: return "unknown_prime";
    case MembershipFailure::negative_remainder: return "negative_remainder";
    case MembershipFailure::outside_cone: return "outside_cone";
  }
  return "unknown";
}

struct Membership {
  bool member = false;
  MembershipFailure failure = MembershipFailure::none;
  std::uint64_t prime = 0;            // offending prime for the prime failures
  PrimaryFactorization certificate;   // recomposes to x when member
};

namespace detail {

// Forced part of any factorization of x: at each p | d(x) the coefficient of
// numerator/p is pinned mod p by the p-adic valuation. What remains is an
// integer that p-multiples of atoms must supply.
struct ResidueSplit {
  MembershipFailure failure = MembershipFailure::none;
  std::uint64_t prime = 0;
  PrimaryFactorization residues;
  std::optional<BigInt> remainder;  // x - forced part, when nonnegative
};

inline ResidueSplit split_residues(const PrimaryMonoidSpec& spec, const Rational& x) {
  ResidueSplit out;
  Rational forced;
  if (!x.is_integer()) {
    const BigInt& d = x.denominator();
    for (auto [p, e] : factorize(d)) {
      if (e > 1) {
        out.failure = MembershipFailure::repeated_prime;
        out.prime = p;
        return out;
      }
      auto family = spec.family_of(p);
      if (!family) {
        out.failure = MembershipFailure::unknown_prime;
        out.prime = p;
        return out;
      }
      BigInt bp(p);
      const BigInt& a = spec.families()[*family].numerator;
      BigInt r = mod_floor(x.numerator() * *mod_inverse(d / bp, bp) * *mod_inverse(a, bp), bp);
      out.residues[p] = r;
      forced += Rational(r * a, bp);
    }
  }
  if (auto rest = checked_sub(x, forced)) out.remainder = rest->numerator();
  return out;
}

inline std::set<std::uint64_t> denominator_primes(const Rational& x) {
  auto v = prime_divisors(x.denominator());
  return {v.begin(), v.end()};
}

}  // namespace detail

/// Decides x in P exactly and returns a factorization when it is.
inline Membership contains_primary(const PrimaryMonoidSpec& spec, const Rational& x) {
  Membership out;
  if (x.is_zero()) {
    out.member = true;
    return out;
  }
  auto split = detail::split_residues(spec, x);
  if (split.failure != MembershipFailure::none) {
    out.failure = split.failure;
    out.prime = split.prime;
    return out;
  }
  if (!split.remainder) {
    out.failure = MembershipFailure::negative_remainder;
    return out;
  }
  auto parts = spec.cone_decompose(*split.remainder);
  if (!parts) {
    out.failure = MembershipFailure::outside_cone;
    return out;
  }
  out.member = true;
  out.certificate = split.residues;
  for (const auto& [family, count] : *parts) {
    const auto& primes = spec.families()[family].primes;
    std::uint64_t p = 0;
    for (const auto& [q, c] : split.residues) {
      if (primes.contains(q)) {
        p = q;
        break;
      }
    }
    if (p == 0) p = *primes.first_member_from(0);
    out.certificate[p] += count * BigInt(p);
  }
  return out;
}

inline bool in_monoid(const PrimaryMonoidSpec& spec, const Rational& x) {
  return contains_primary(spec, x).member;
}

/// y |_P x, i.e. x - y lies in P.
inline bool divides(const PrimaryMonoidSpec& spec, const Rational& y, const Rational& x) {
  auto diff = checked_sub(x, y);
  return diff && in_monoid(spec, *diff);
}

namespace detail {

inline std::pair<std::uint64_t, std::size_t> require_atom(const PrimaryMonoidSpec& spec,
                                                         const Rational& a) {
  const BigInt& d = a.denominator();
  if (d < 2 || !fits_u64(d) || !is_prime(d)) {
    throw Error(ErrorKind::NotAnAtom, a.to_string() + " is not an atom");
  }
  std::uint64_t p = d.convert_to<std::uint64_t>();
  auto family = spec.family_of(p);
  if (!family || spec.families()[*family].numerator != a.numerator()) {
    throw Error(ErrorKind::NotAnAtom, a.to_string() + " is not an atom");
  }
  return {p, *family};
}

}  // namespace detail

/// m(a, x) = max { n : n a |_P x }.
///
/// Subtracting k copies of a = n/p keeps every other residue and moves the
/// p-residue, so x - k a lies in P iff k <= r_p + p t for some t with
/// (remainder - t n) in the numerator cone; the answer is r_p + p T for the
/// largest such T.
inline BigInt max_multiplicity(const PrimaryMonoidSpec& spec, const Rational& a, const Rational& x) {
  auto [p, family] = detail::require_atom(spec, a);
  auto split = detail::split_residues(spec, x);
  if (split.failure != MembershipFailure::none || !split.remainder ||
      !spec.cone_contains(*split.remainder)) {
    throw Error(ErrorKind::NotInMonoid, x.to_string() + " is not in the monoid");
  }
  const BigInt& n = spec.families()[family].numerator;
  const BigInt& y = *split.remainder;
  BigInt t = y / n;
  while (t > 0 && !spec.cone_contains(y - t * n)) --t;
  BigInt residue = split.residues.contains(p) ? split.residues.at(p) : BigInt(0);
  return residue + BigInt(p) * t;
}

/// True when m(a, x) < d(a) for every atom a; this forces x to be a molecule
/// (one direction only). Atoms of one family whose prime does not divide d(x)
/// all have m(a, x) = p T for the same T, so one representative per family
/// covers them.
inline bool sufficient_molecule_check(const PrimaryMonoidSpec& spec, const Rational& x) {
  if (!in_monoid(spec, x)) throw Error(ErrorKind::NotInMonoid, x.to_string() + " is not in the monoid");
  auto dx = detail::denominator_primes(x);
  for (auto p : dx) {
    if (max_multiplicity(spec, *spec.atom_at(p), x) >= BigInt(p)) return false;
  }
  for (const auto& f : spec.families()) {
    auto p = f.primes.first_member_not_in(dx);
    if (!p) continue;
    if (max_multiplicity(spec, Rational(f.numerator, BigInt(*p)), x) >= BigInt(*p)) return false;
  }
  return true;
}

/// Stable atoms are those whose numerator occurs infinitely often.
struct AtomClassification {
  std::vector<std::size_t> stable_families;
  std::vector<std::size_t> unstable_families;
  PrimaryMonoidSpec stable_part;            // S(P)
  PrimaryMonoidSpec unstable_part;          // U(P), finitely generated
  std::vector<Rational> unstable_generators;
  std::vector<std::uint64_t> unstable_primes;  // aligned with unstable_generators
};

inline AtomClassification classify_atoms(const PrimaryMonoidSpec& spec) {
  AtomClassification out;
  std::set<BigInt> stable_numerators;
  for (const auto& f : spec.families()) {
    if (f.is_infinite()) stable_numerators.insert(f.numerator);
  }
  std::vector<AtomFamily> stable, unstable;
  for (std::size_t i = 0; i < spec.families().size(); ++i) {
    const auto& f = spec.families()[i];
    if (stable_numerators.contains(f.numerator)) {
      out.stable_families.push_back(i);
      stable.push_back(f);
    } else {
      out.unstable_families.push_back(i);
      unstable.push_back(f);
      for (auto p : f.primes.members()) {
        out.unstable_primes.push_back(p);
        out.unstable_generators.push_back(Rational(f.numerator, BigInt(p)));
      }
    }
  }
  out.stable_part = PrimaryMonoidSpec(std::move(stable));
  out.unstable_part = PrimaryMonoidSpec(std::move(unstable));
  return out;
}

namespace detail {

inline std::vector<BigInt> distinct_numerators(const PrimaryMonoidSpec& spec) {
  std::set<BigInt> ns;
  for (const auto& f : spec.families()) {
    if (!f.primes.is_empty()) ns.insert(f.numerator);
  }
  return {ns.begin(), ns.end()};
}

// |Z(x)| = 1 in a stable monoid: no numerator divides x. Holds for x = 0.
inline bool unique_in_stable(const PrimaryMonoidSpec& stable, const Rational& x) {
  for (const auto& n : distinct_numerators(stable)) {
    if (divides(stable, Rational(n), x)) return false;
  }
  return true;
}

inline bool absolutely_unstable_unchecked(const PrimaryMonoidSpec& spec,
                                          const AtomClassification& cls, const Rational& u) {
  if (u.is_zero()) return true;
  // A stable atom n/p with p | d(u): test it directly.
  for (auto p : denominator_primes(u)) {
    for (auto i : cls.stable_families) {
      const auto& f = spec.families()[i];
      if (f.primes.contains(p) && divides(spec, Rational(f.numerator, BigInt(p)), u)) return false;
    }
  }
  // A stable atom n/p with p not dividing d(u) divides u iff n does.
  for (const auto& n : distinct_numerators(cls.stable_part)) {
    if (divides(spec, Rational(n), u)) return false;
  }
  return true;
}

}  // namespace detail

/// u in U(P) is absolutely unstable when no stable atom divides it in P.
inline bool is_absolutely_unstable(const PrimaryMonoidSpec& spec, const Rational& u) {
  auto cls = classify_atoms(spec);
  if (!in_monoid(cls.unstable_part, u)) {
    throw Error(ErrorKind::NotInUnstablePart, u.to_string() + " is not in the unstable part");
  }
  return detail::absolutely_unstable_unchecked(spec, cls, u);
}

/// For a monoid whose atoms are all stable: x is a molecule iff no atom
/// numerator divides x.
inline bool molecule_stable(const PrimaryMonoidSpec& spec, const Rational& x) {
  auto cls = classify_atoms(spec);
  if (!cls.unstable_generators.empty()) {
    throw Error(ErrorKind::NotStableMonoid, "the monoid has unstable atoms");
  }
  if (!in_monoid(spec, x)) throw Error(ErrorKind::NotInMonoid, x.to_string() + " is not in the monoid");
  return !x.is_zero() && detail::unique_in_stable(spec, x);
}

enum class MoleculeStatus { molecule, not_molecule, not_member };

constexpr std::string_view to_string(MoleculeStatus s) {
  switch (s) {
    case MoleculeStatus::molecule: return "molecule";
    case MoleculeStatus::not_molecule: return "not_molecule";
    case MoleculeStatus::not_member: return "not_member";
  }
  return "unknown";
}

/// The atoms a/p of a primary monoid with p <= depth.
struct Truncation {
  PrimaryMonoidSpec spec;
  std::uint64_t depth = 0;
  std::vector<std::uint64_t> primes;    // ascending
  std::vector<Rational> generators;     // aligned with primes
};

inline Truncation truncate(const PrimaryMonoidSpec& spec, std::uint64_t depth) {
  Truncation t{spec, depth, {}, {}};
  std::map<std::uint64_t, Rational> atoms;
  for (const auto& f : spec.families()) {
    for (auto p : f.primes.members_up_to(depth)) atoms.emplace(p, Rational(f.numerator, BigInt(p)));
  }
  for (const auto& [p, a] : atoms) {
    t.primes.push_back(p);
    t.generators.push_back(a);
  }
  return t;
}

struct CertifiedCount {
  bool infinite = false;
  std::size_t count = 0;                         // capped at the requested cap
  std::vector<PrimaryFactorization> witnesses;   // up to `cap` (two when infinite)
};

/// Brute-force |Z(x)| in the full monoid, computed inside a truncation.
///
/// An atom n/p with p not dividing d(x) can only appear in blocks of p,
/// adding n, so atoms with n > x never matter. If an infinite family has
/// n |_P x, x has infinitely many factorizations; otherwise that family
/// contributes only its atoms at primes dividing d(x). Throws
/// TruncationInsufficient when the window misses an atom that could occur.
inline CertifiedCount certified_count(const Truncation& window, const Rational& x, std::size_t cap,
                                      const Limits& limits = {}) {
  const auto& spec = window.spec;
  CertifiedCount out;
  if (x.is_zero()) {
    out.count = 1;
    out.witnesses.emplace_back();
    return out;
  }
  auto split = detail::split_residues(spec, x);
  if (split.failure != MembershipFailure::none) return out;
  auto dx = detail::denominator_primes(x);
  for (auto p : dx) {
    if (p > window.depth) {
      throw Error(ErrorKind::TruncationInsufficient,
                  "prime " + std::to_string(p) + " of d(x) lies beyond depth " +
                      std::to_string(window.depth));
    }
  }
  std::set<std::uint64_t> usable(dx.begin(), dx.end());
  for (const auto& f : spec.families()) {
    if (f.primes.is_empty() || Rational(f.numerator) > x) continue;
    if (f.is_infinite()) {
      auto rest = contains_primary(spec, x - Rational(f.numerator));
      if (!rest.member) continue;
      out.infinite = true;
      out.count = cap;
      for (auto p : f.primes.first_members(2)) {
        auto z = rest.certificate;
        z[p] += BigInt(p);
        out.witnesses.push_back(std::move(z));
      }
      return out;
    }
    for (auto p : f.primes.members()) {
      if (p > window.depth) {
        throw Error(ErrorKind::TruncationInsufficient,
                    "finite family prime " + std::to_string(p) + " lies beyond depth " +
                        std::to_string(window.depth));
      }
      usable.insert(p);
    }
  }
  std::vector<std::uint64_t> primes;
  std::vector<Rational> atoms;
  for (std::size_t i = 0; i < window.primes.size(); ++i) {
    if (usable.contains(window.primes[i])) {
      primes.push_back(window.primes[i]);
      atoms.push_back(window.generators[i]);
    }
  }
  if (atoms.empty()) return out;
  std::size_t visited = 0;
  AtomSystem(atoms).for_each(x, [&](const RationalFactorization& z) {
    if (++visited > limits.max_factorizations) {
      throw Error(ErrorKind::LimitExceeded, "too many factorizations of " + x.to_string());
    }
    PrimaryFactorization pz;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (z[i] != 0) pz[primes[i]] = z[i];
    }
    out.witnesses.push_back(std::move(pz));
    return ++out.count < cap;
  });
  return out;
}

/// certified_count with the smallest window that certifies x.
inline CertifiedCount certified_factorization_count(const PrimaryMonoidSpec& spec,
                                                    const Rational& x, std::size_t cap,
                                                    const Limits& limits = {}) {
  std::uint64_t depth = 2;
  if (!x.is_zero()) {
    for (auto p : detail::denominator_primes(x)) depth = std::max(depth, p);
  }
  for (const auto& f : spec.families()) {
    if (f.is_infinite() || Rational(f.numerator) > x) continue;
    for (auto p : f.primes.members()) depth = std::max(depth, p);
  }
  return certified_count(truncate(spec, depth), x, cap, limits);
}

struct GeneralVerdict {
  MoleculeStatus status = MoleculeStatus::not_member;
  std::optional<Rational> stable_component;    // s
  std::optional<Rational> unstable_component;  // u
  PrimaryFactorization factorization;          // z_s + z_u when a molecule
  // Independent brute-force verdict |Z(x)| == 1, when a certified window exists.
  std::optional<bool> certified_unique;
  bool discrepancy() const {
    return certified_unique && *certified_unique != (status == MoleculeStatus::molecule);
  }
};

/// Decides whether x is a molecule by searching for x = s + u with s a
/// molecule of the stable part and u an absolutely unstable element with a
/// unique factorization in U(P). Both s and u may be 0.
inline GeneralVerdict molecule_general(const PrimaryMonoidSpec& spec, const Rational& x,
                                       const Limits& limits = {}) {
  GeneralVerdict out;
  if (!in_monoid(spec, x)) return out;
  out.status = MoleculeStatus::not_molecule;
  if (x.is_zero()) return out;
  try {
    auto counted = certified_factorization_count(spec, x, 2, limits);
    out.certified_unique = !counted.infinite && counted.count == 1;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::TruncationInsufficient && e.kind() != ErrorKind::LimitExceeded) throw;
  }

  auto cls = classify_atoms(spec);
  auto split = detail::split_residues(spec, x);

  // u must carry x's residue at every unstable prime; other copies of an
  // unstable atom come in blocks of p.
  const auto& primes = cls.unstable_primes;
  const auto& gens = cls.unstable_generators;
  std::vector<BigInt> base(primes.size(), 0);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (split.residues.contains(primes[i])) base[i] = split.residues.at(primes[i]);
  }
  std::set<Rational> candidates;
  std::size_t visited = 0;
  std::vector<BigInt> coeffs(primes.size());
  auto walk = [&](auto&& self, std::size_t i, const Rational& sum) -> void {
    if (++visited > limits.max_factorizations) {
      throw Error(ErrorKind::LimitExceeded, "too many unstable candidates for " + x.to_string());
    }
    if (i == primes.size()) {
      candidates.insert(sum);
      return;
    }
    BigInt c = base[i];
    Rational part = sum + c * gens[i];
    const Rational block = BigInt(primes[i]) * gens[i];
    while (part <= x) {
      self(self, i + 1, part);
      part += block;
    }
  };
  walk(walk, 0, Rational());

  AtomSystem unstable_system(gens);
  for (const auto& u : candidates) {
    Rational s = x - u;
    auto in_stable = contains_primary(cls.stable_part, s);
    if (!in_stable.member) continue;
    if (!detail::unique_in_stable(cls.stable_part, s)) continue;
    std::optional<RationalFactorization> zu;
    std::size_t count = 0;
    unstable_system.for_each(u, [&](const RationalFactorization& z) {
      zu = z;
      return ++count < 2;
    });
    if (count != 1) continue;
    if (!detail::absolutely_unstable_unchecked(spec, cls, u)) continue;
    out.status = MoleculeStatus::molecule;
    out.stable_component = s;
    out.unstable_component = u;
    out.factorization = in_stable.certificate;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if ((*zu)[i] != 0) out.factorization[primes[i]] += (*zu)[i];
    }
    return out;
  }
  return out;
}

struct ElementaryVerdict {
  MoleculeStatus status = MoleculeStatus::not_member;
  PrimaryFactorization factorization;  // residues plus the integer part spread over one prime
  BigInt integer_part = 0;             // c = x - sum r_p / p
  bool is_molecule = false;            // c = 0 and x != 0
  bool one_does_not_divide = false;    // not 1 |_E x
  bool multiplicities_below_denominators = false;  // m(1/p, x) < p for all p
  bool coefficients_below_primes = false;          // alpha_j < p_j in the factorization
  bool conditions_agree() const {
    return is_molecule == one_does_not_divide && is_molecule == multiplicities_below_denominators &&
           is_molecule == coefficients_below_primes;
  }
};

/// Molecule test in E_S for infinite S, evaluating all four equivalent
/// conditions independently.
inline ElementaryVerdict molecule_elementary(const PrimeSetDescriptor& primes, const Rational& x) {
  if (!primes.is_infinite()) {
    throw Error(ErrorKind::InvalidSpec, "elementary characterization needs an infinite prime set");
  }
  ElementaryVerdict out;
  if (x.is_zero()) {
    out.status = MoleculeStatus::not_molecule;
    return out;
  }
  auto spec = elementary_spec(primes);
  auto split = detail::split_residues(spec, x);
  if (split.failure != MembershipFailure::none || !split.remainder) return out;
  out.integer_part = *split.remainder;
  out.factorization = split.residues;
  std::uint64_t smallest = *primes.first_member_from(0);
  if (out.integer_part > 0) out.factorization[smallest] += out.integer_part * BigInt(smallest);

  out.is_molecule = out.integer_part == 0;
  out.one_does_not_divide = !divides(spec, Rational(1), x);

  auto dx = detail::denominator_primes(x);
  bool below = true;
  for (auto p : dx) below = below && max_multiplicity(spec, Rational(BigInt(1), BigInt(p)), x) < BigInt(p);
  if (auto rep = primes.first_member_not_in(dx)) {
    below = below && max_multiplicity(spec, Rational(BigInt(1), BigInt(*rep)), x) < BigInt(*rep);
  }
  out.multiplicities_below_denominators = below;

  out.coefficients_below_primes = std::all_of(
      out.factorization.begin(), out.factorization.end(),
      [](const auto& entry) { return entry.second < BigInt(entry.first); });

  out.status = out.is_molecule ? MoleculeStatus::molecule : MoleculeStatus::not_molecule;
  return out;
}

/// For a non-molecule x of E_S: the canonical factorization with its integer
/// part c rewritten as c q copies of 1/q, once for each of the first `count`
/// primes q of S. These are pairwise distinct factorizations of x.
inline std::vector<PrimaryFactorization> elementary_factorization_family(
    const PrimeSetDescriptor& primes, const Rational& x, std::size_t count) {
  auto verdict = molecule_elementary(primes, x);
  if (verdict.status != MoleculeStatus::not_molecule || verdict.integer_part == 0) {
    throw Error(ErrorKind::OutOfRange, x.to_string() + " is not a non-molecule of E_S");
  }
  auto base = detail::split_residues(elementary_spec(primes), x).residues;
  std::vector<PrimaryFactorization> out;
  for (auto q : primes.first_members(count)) {
    auto z = base;
    z[q] += verdict.integer_part * BigInt(q);
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace molekul
