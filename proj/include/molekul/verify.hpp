#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "molekul/numerical_semigroup.hpp"
#include "molekul/primary.hpp"
#include "molekul/puiseux.hpp"

namespace molekul {

struct PropertyResult {
  std::string suite;
  std::string property;
  bool passed = true;
  std::size_t checked = 0;
  std::string counterexample;  // first failing instance
};

struct VerifyReport {
  std::vector<PropertyResult> results;
  bool passed() const {
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  }
};

namespace detail {

// Tallies one property; the first failure keeps its counterexample.
class PropertyTally {
 public:
  PropertyTally(VerifyReport& report, std::string suite, std::string property)
      : report_(report), index_(report.results.size()) {
    report_.results.push_back(PropertyResult{std::move(suite), std::move(property), true, 0, {}});
  }
  PropertyTally(const PropertyTally&) = delete;
  PropertyTally& operator=(const PropertyTally&) = delete;

  void check(bool ok, const std::function<std::string()>& describe) {
    auto& result = report_.results[index_];
    ++result.checked;
    if (!ok && result.passed) {
      result.passed = false;
      result.counterexample = describe();
    }
  }

 private:
  VerifyReport& report_;
  std::size_t index_;
};

inline std::string join(const std::vector<std::int64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

}  // namespace detail

/// Distinct numerical semigroups with multiplicity at most max_multiplicity
/// and generators at most max_generator, drawn with a fixed seed.
inline std::vector<NumericalSemigroup> semigroup_corpus(std::size_t count,
                                                        std::int64_t max_multiplicity = 8,
                                                        std::int64_t max_generator = 25,
                                                        std::uint64_t seed = 20240607) {
  std::mt19937_64 rng(seed);
  std::vector<NumericalSemigroup> out;
  std::set<std::vector<std::int64_t>> seen;
  std::size_t attempts = 0;
  while (out.size() < count && attempts < count * 1000) {
    ++attempts;
    std::int64_t m = std::uniform_int_distribution<std::int64_t>(2, max_multiplicity)(rng);
    std::size_t extra = std::uniform_int_distribution<std::size_t>(1, static_cast<std::size_t>(m - 1))(rng);
    std::vector<std::int64_t> gens{m};
    std::uniform_int_distribution<std::int64_t> pick(m + 1, max_generator);
    for (std::size_t i = 0; i < extra; ++i) gens.push_back(pick(rng));
    std::int64_t g = 0;
    for (auto v : gens) g = std::gcd(g, v);
    if (g != 1) continue;
    auto n = NumericalSemigroup::from_generators(gens);
    if (seen.insert(n.atoms()).second) out.push_back(std::move(n));
  }
  return out;
}

namespace detail {

// Exact factorization counts for 0..bound by the unbounded coin recurrence.
inline std::vector<std::uint64_t> full_counts(const std::vector<std::int64_t>& atoms, std::int64_t bound) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(bound + 1), 0);
  counts[0] = 1;
  for (auto a : atoms) {
    for (std::int64_t v = a; v <= bound; ++v) {
      counts[static_cast<std::size_t>(v)] += counts[static_cast<std::size_t>(v - a)];
    }
  }
  return counts;
}

inline void suite_numsgp_oracle(VerifyReport& report) {
  const std::string suite = "numsgp-oracle";
  auto corpus = semigroup_corpus(60, 6, 20);
  {
    PropertyTally t(report, suite, "membership and Frobenius match the coin recurrence");
    for (const auto& n : corpus) {
      const std::int64_t bound = n.frobenius() + n.atoms().back() + 1;
      auto counts = full_counts(n.atoms(), bound);
      std::int64_t last_gap = -1;
      bool ok = true;
      for (std::int64_t x = 0; x <= bound; ++x) {
        if (counts[static_cast<std::size_t>(x)] == 0) last_gap = x;
        ok = ok && (counts[static_cast<std::size_t>(x)] > 0) == n.contains(x);
      }
      t.check(ok && last_gap == n.frobenius(), [&] { return n.to_string(); });
    }
  }
  {
    PropertyTally t(report, suite, "factorization enumeration matches the coin recurrence");
    for (const auto& n : corpus) {
      auto counts = full_counts(n.atoms(), 80);
      for (std::int64_t x = 0; x <= 80; ++x) {
        auto zs = factorizations(n, x);
        bool ok = zs.size() == counts[static_cast<std::size_t>(x)];
        for (const auto& z : zs) ok = ok && evaluate_factorization(n, z) == x;
        t.check(ok, [&] { return n.to_string() + " x=" + std::to_string(x); });
      }
    }
  }
  {
    PropertyTally t(report, suite, "Betti elements are exactly the disconnected graphs");
    for (const auto& n : corpus) {
      if (n.is_naturals()) continue;
      auto betti = betti_elements(n);
      std::set<std::int64_t> bset(betti.begin(), betti.end());
      const std::int64_t bound = n.frobenius() + 2 * n.atoms().back();
      bool ok = true;
      std::int64_t bad = -1;
      for (std::int64_t x = 1; x <= bound && ok; ++x) {
        if (!n.contains(x)) continue;
        bool disconnected = !factorization_graph(n, x).is_connected();
        if (disconnected != bset.contains(x)) {
          ok = false;
          bad = x;
        }
      }
      t.check(ok, [&] { return n.to_string() + " x=" + std::to_string(bad); });
    }
  }
}

inline void suite_dim2(VerifyReport& report) {
  const std::string suite = "dim2";
  PropertyTally closed(report, suite, "closed form equals enumeration for coprime 2 <= p < q <= 30");
  PropertyTally witness(report, suite, "(q-1)p + (p-1)q is a molecule");
  for (std::int64_t p = 2; p <= 30; ++p) {
    for (std::int64_t q = p + 1; q <= 30; ++q) {
      if (std::gcd(p, q) != 1) continue;
      auto n = NumericalSemigroup::from_generators({p, q});
      auto formula = molecules_dim2(p, q);
      auto enumerated = molecules(n, MoleculeMode::enumerate);
      closed.check(formula == enumerated, [&] { return n.to_string(); });
      std::int64_t w = (q - 1) * p + (p - 1) * q;
      witness.check(std::binary_search(enumerated.begin(), enumerated.end(), w),
                    [&] { return n.to_string() + " x=" + std::to_string(w); });
    }
  }
}

inline void suite_betti_lemma(VerifyReport& report) {
  const std::string suite = "betti-lemma";
  auto corpus = semigroup_corpus(200);
  PropertyTally lemma(report, suite, "molecules by enumeration equal molecules by Betti filter");
  PropertyTally remark(report, suite, "at least two molecules are not atoms");
  for (const auto& n : corpus) {
    if (n.is_naturals()) continue;
    auto a = molecules(n, MoleculeMode::enumerate);
    auto b = molecules(n, MoleculeMode::betti_filter);
    lemma.check(a == b, [&] { return n.to_string(); });
    std::size_t non_atoms = 0;
    for (auto m : a) {
      if (!std::binary_search(n.atoms().begin(), n.atoms().end(), m)) ++non_atoms;
    }
    remark.check(non_atoms >= 2, [&] { return n.to_string() + " molecules=" + join(a); });
  }
}

inline void suite_stages(VerifyReport& report) {
  const std::string suite = "stages";
  auto pool = PrimePool::of(first_primes(50));
  auto stages = stable_stages(pool, 4);
  PropertyTally grow(report, suite, "atom sets strictly grow");
  PropertyTally split(report, suite, "two-atom sums gain a second factorization");
  PropertyTally fresh(report, suite, "new generators are atoms");
  PropertyTally collapse(report, suite, "molecules of the next stage inside a stage are its atoms");
  for (std::size_t j = 0; j + 1 < stages.size(); ++j) {
    const auto& cur = stages[j].monoid;
    const auto& next = stages[j + 1].monoid;
    const auto& na = next.atoms();
    bool subset = std::all_of(cur.atoms().begin(), cur.atoms().end(), [&](const Rational& a) {
      return std::binary_search(na.begin(), na.end(), a);
    });
    grow.check(subset && na.size() > cur.atoms().size(), [&] { return next.to_string(); });
    for (const auto& g : stages[j + 1].new_generators) {
      fresh.check(std::binary_search(na.begin(), na.end(), g), [&] { return g.to_string(); });
    }
    for (const auto& r : two_atom_sums(cur)) {
      split.check(fg_factorization_count(next, r, 2) == 2,
                  [&] { return "stage " + std::to_string(j + 2) + " x=" + r.to_string(); });
    }
    if (next.reduced()) {
      for (const auto& m : molecules_fg(next)) {
        if (!contains_fg(cur, m)) continue;
        collapse.check(std::binary_search(cur.atoms().begin(), cur.atoms().end(), m),
                       [&] { return "stage " + std::to_string(j + 2) + " x=" + m.to_string(); });
      }
    }
  }
}

inline std::vector<Rational> squarefree_grid(std::size_t prime_count, std::int64_t max_numerator) {
  auto primes = first_primes(prime_count);
  std::vector<Rational> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << primes.size()); ++mask) {
    BigInt d = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (mask & (std::size_t{1} << i)) d *= primes[i];
    }
    for (std::int64_t n = 1; n <= max_numerator; ++n) {
      if (gcd(BigInt(n), d) == 1) out.emplace_back(BigInt(n), d);
    }
  }
  return out;
}

inline void suite_elementary(VerifyReport& report) {
  const std::string suite = "elementary";
  auto E = PrimeSetDescriptor::all_from(2);
  {
    PropertyTally t(report, suite, "four molecule conditions agree");
    for (const auto& x : squarefree_grid(8, 120)) {
      auto v = molecule_elementary(E, x);
      if (v.status == MoleculeStatus::not_member) continue;
      t.check(v.conditions_agree(), [&] { return x.to_string(); });
    }
  }
  {
    PropertyTally t(report, suite, "non-molecules admit ten distinct factorizations");
    auto spec = elementary_spec(E);
    std::size_t sampled = 0;
    for (const auto& x : squarefree_grid(4, 40)) {
      if (sampled == 20) break;
      auto v = molecule_elementary(E, x);
      if (v.is_molecule) continue;
      ++sampled;
      auto family = elementary_factorization_family(E, x, 10);
      std::set<PrimaryFactorization> distinct(family.begin(), family.end());
      bool ok = distinct.size() == 10;
      for (const auto& z : family) ok = ok && evaluate(spec, z) == x;
      t.check(ok, [&] { return x.to_string(); });
    }
  }
}

inline std::vector<std::pair<std::string, PrimaryMonoidSpec>> sample_specs() {
  return {
      {"elementary", elementary_spec(PrimeSetDescriptor::all_from(2))},
      {"mixed-mod4",
       PrimaryMonoidSpec({AtomFamily{1, PrimeSetDescriptor::residue_class(1, 4, 2)},
                          AtomFamily{3, PrimeSetDescriptor::list({2})}})},
      {"mixed-two-stable",
       PrimaryMonoidSpec({AtomFamily{2, PrimeSetDescriptor::residue_class(1, 6, 2)},
                          AtomFamily{3, PrimeSetDescriptor::residue_class(5, 6, 2)},
                          AtomFamily{7, PrimeSetDescriptor::list({2, 3})}})},
      {"odd-square", odd_square_spec(6)},
  };
}

inline void suite_primary_general(VerifyReport& report) {
  const std::string suite = "primary-general";
  {
    PropertyTally t(report, suite, "11/3 is a molecule divisible by 1");
    auto spec = odd_square_spec(10);
    auto x = Rational(BigInt(11), BigInt(3));
    auto v = molecule_general(spec, x);
    PrimaryFactorization expected{{2, 2}, {3, 1}};
    t.check(v.status == MoleculeStatus::molecule && v.factorization == expected &&
                divides(spec, Rational(1), x) && !sufficient_molecule_check(spec, x),
            [&] { return describe(spec, v.factorization); });
  }
  PropertyTally doubling(report, suite, "2a is a molecule when d(a) != 2");
  PropertyTally sufficient(report, suite, "sufficient condition implies molecule");
  PropertyTally agreement(report, suite, "decomposition verdict matches certified count");
  for (const auto& [name, spec] : sample_specs()) {
    auto window = truncate(spec, 60);
    for (const auto& a : window.generators) {
      if (a.denominator() == 2) continue;
      auto v = molecule_general(spec, a + a);
      doubling.check(v.status == MoleculeStatus::molecule,
                     [&, n = name, a = a] { return n + " a=" + a.to_string(); });
    }
    for (std::int64_t n = 1; n <= 40; ++n) {
      for (std::int64_t d : {1, 2, 3, 5, 6, 7, 10, 15, 21, 30}) {
        Rational x{BigInt(n), BigInt(d)};
        if (!in_monoid(spec, x)) continue;
        auto v = molecule_general(spec, x);
        if (sufficient_molecule_check(spec, x)) {
          sufficient.check(v.status == MoleculeStatus::molecule,
                           [&, nm = name] { return nm + " x=" + x.to_string(); });
        }
        if (v.certified_unique) {
          agreement.check(!v.discrepancy(), [&, nm = name] { return nm + " x=" + x.to_string(); });
        }
      }
    }
  }
}

}  // namespace detail

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"numsgp-oracle", "dim2",       "betti-lemma",
                                              "stages",        "elementary", "primary-general"};
  return names;
}

/// Runs one named suite, or every suite for "all".
inline VerifyReport verify_suite(std::string_view name) {
  static const std::map<std::string, void (*)(VerifyReport&), std::less<>> table{
      {"numsgp-oracle", detail::suite_numsgp_oracle},
      {"dim2", detail::suite_dim2},
      {"betti-lemma", detail::suite_betti_lemma},
      {"stages", detail::suite_stages},
      {"elementary", detail::suite_elementary},
      {"primary-general", detail::suite_primary_general},
  };
  VerifyReport report;
  if (name == "all") {
    for (const auto& n : suite_names()) table.find(n)->second(report);
    return report;
  }
  auto it = table.find(name);
  if (it == table.end()) throw Error(ErrorKind::UnknownSuite, "unknown suite '" + std::string(name) + "'");
  it->second(report);
  return report;
}

}  // namespace molekul
