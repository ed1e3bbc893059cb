#include <map>
#include <random>

#include <gtest/gtest.h>

#include "molekul/primary.hpp"
#include "molekul/verify.hpp"
#include "oracles.hpp"

using namespace molekul;

namespace {

Rational q(const char* text) { return Rational::parse(text); }

const PrimeSetDescriptor kAll = PrimeSetDescriptor::all_from(2);

PrimaryMonoidSpec elementary() { return elementary_spec(kAll); }

PrimaryMonoidSpec mixed_mod4() {
  return PrimaryMonoidSpec::parse("numerator=1 primes=mod:1/4,>=2\nnumerator=3 primes=list:2\n");
}

// Every family has all its primes, or at least two of them, below 14, so
// atoms over primes <= 13 decide uniqueness for x with d(x) | 30030.
std::vector<std::pair<std::string, PrimaryMonoidSpec>> small_window_specs() {
  return {
      {"elementary", elementary()},
      {"mixed-mod4", mixed_mod4()},
      {"mixed-two-stable",
       PrimaryMonoidSpec::parse("numerator=2 primes=mod:1/6,>=2\n"
                                "numerator=3 primes=mod:5/6,>=2\n"
                                "numerator=7 primes=list:2,3\n")},
      {"odd-square", odd_square_spec(5)},
  };
}

// |Z(x)| capped at 2 over the atoms with prime <= 13.
std::size_t window_count(const PrimaryMonoidSpec& spec, const Rational& x) {
  const std::int64_t L = 30030;
  std::vector<std::int64_t> weights;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    if (auto a = spec.atom_at(p)) weights.push_back((a->numerator() * (L / p)).convert_to<std::int64_t>());
  }
  Rational scaled = x * Rational(L);
  if (!scaled.is_integer()) return 0;
  auto target = scaled.numerator().convert_to<std::int64_t>();
  std::vector<std::uint8_t> counts(static_cast<std::size_t>(target + 1), 0);
  counts[0] = 1;
  for (auto w : weights) {
    for (std::int64_t v = w; v <= target; ++v) {
      auto& slot = counts[static_cast<std::size_t>(v)];
      slot = static_cast<std::uint8_t>(std::min(2, slot + counts[static_cast<std::size_t>(v - w)]));
    }
  }
  return counts[static_cast<std::size_t>(target)];
}

std::vector<Rational> small_grid() {
  std::vector<Rational> out;
  for (std::int64_t d : {1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 21, 22, 26, 30, 33, 35, 39, 42, 65, 70, 77,
                         105, 143, 210}) {
    for (std::int64_t n = 1; n <= 2 * d; ++n) {
      if (std::gcd(n, d) == 1) out.push_back(make_rational(n, d));
    }
  }
  return out;
}

// Largest k with x - k a in P, by descending search from floor(x / a).
BigInt descending_multiplicity(const PrimaryMonoidSpec& spec, const Rational& a, const Rational& x) {
  for (BigInt k = (x / a).floor(); k >= 0; --k) {
    auto rest = checked_sub(x, k * a);
    if (rest && in_monoid(spec, *rest)) return k;
  }
  return -1;
}

}  // namespace

TEST(PrimeSet, ParseAndContain) {
  for (const char* text : {"list:2,3,5", "all:>=7", "all:>=2,exclude:3,5", "mod:1/4,>=2",
                           "mod:2/3,>=11,exclude:17"}) {
    EXPECT_EQ(PrimeSetDescriptor::parse(text).to_string(), text);
  }
  auto m = PrimeSetDescriptor::parse("mod:1/4,>=2");
  EXPECT_TRUE(m.contains(5));
  EXPECT_FALSE(m.contains(7));
  EXPECT_FALSE(m.contains(9));
  EXPECT_TRUE(m.is_infinite());
  EXPECT_EQ(m.first_members(3), (std::vector<std::uint64_t>{5, 13, 17}));
  EXPECT_EQ(m.members_up_to(30), (std::vector<std::uint64_t>{5, 13, 17, 29}));
  auto even = PrimeSetDescriptor::parse("mod:2/4,>=2");
  EXPECT_FALSE(even.is_infinite());
  EXPECT_EQ(even.members(), (std::vector<std::uint64_t>{2}));
  EXPECT_THROW(PrimeSetDescriptor::parse("list:4"), Error);
  EXPECT_THROW(PrimeSetDescriptor::parse("evens:2"), Error);
  EXPECT_THROW(PrimeSetDescriptor::parse("all:7"), Error);
}

TEST(PrimeSet, Overlap) {
  auto a = PrimeSetDescriptor::parse("mod:1/4,>=2");
  auto b = PrimeSetDescriptor::parse("mod:3/4,>=2");
  EXPECT_FALSE(common_prime(a, b).has_value());
  EXPECT_EQ(common_prime(a, PrimeSetDescriptor::parse("mod:1/3,>=2")), 13u);
  EXPECT_EQ(common_prime(a, PrimeSetDescriptor::parse("list:3,29")), 29u);
}

TEST(PrimarySpec, Validation) {
  try {
    PrimaryMonoidSpec::parse("numerator=1 primes=all:>=2\nnumerator=3 primes=list:7\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidSpec);
    EXPECT_NE(e.detail().find("prime 7"), std::string::npos);
  }
  EXPECT_THROW(PrimaryMonoidSpec::parse("numerator=6 primes=list:3"), Error);
  EXPECT_THROW(PrimaryMonoidSpec::parse("numerator=1 primes=list:3 extra"), Error);
  EXPECT_THROW(PrimaryMonoidSpec::parse("numerator=0 primes=list:3"), Error);
  auto spec = PrimaryMonoidSpec::parse("# comment\n\nnumerator=1 primes=mod:1/4,>=2\nnumerator=3 primes=list:2\n");
  EXPECT_EQ(spec.families().size(), 2u);
  EXPECT_EQ(PrimaryMonoidSpec::parse(spec.to_string()).to_string(), spec.to_string());
}

TEST(Primary, ContainsExamples) {
  auto m = contains_primary(elementary(), q("5/6"));
  EXPECT_TRUE(m.member);
  EXPECT_EQ(m.certificate, (PrimaryFactorization{{2, 1}, {3, 1}}));
  auto odd = PrimaryMonoidSpec({AtomFamily{2, PrimeSetDescriptor::all_from(3)}});
  auto r = contains_primary(odd, q("2/15"));
  EXPECT_FALSE(r.member);
  EXPECT_EQ(r.failure, MembershipFailure::negative_remainder);
  EXPECT_TRUE(contains_primary(odd, Rational()).member);
  EXPECT_EQ(contains_primary(elementary(), q("1/4")).failure, MembershipFailure::repeated_prime);
  EXPECT_EQ(contains_primary(odd, q("1/2")).failure, MembershipFailure::unknown_prime);
  EXPECT_EQ(contains_primary(odd, Rational(1)).failure, MembershipFailure::outside_cone);
}

TEST(Primary, MembershipMatchesWindowOracle) {
  for (const auto& [name, spec] : small_window_specs()) {
    for (const auto& x : small_grid()) {
      auto m = contains_primary(spec, x);
      ASSERT_EQ(m.member, window_count(spec, x) > 0) << name << " " << x;
      if (m.member) {
        ASSERT_EQ(evaluate(spec, m.certificate), x) << name << " " << x;
      }
    }
  }
}

TEST(Primary, MaxMultiplicity) {
  auto e = elementary();
  EXPECT_EQ(max_multiplicity(e, q("1/2"), q("5/6")), 1);
  EXPECT_EQ(max_multiplicity(e, q("1/2"), q("3/2")), 3);
  EXPECT_EQ(max_multiplicity(e, q("1/3"), Rational()), 0);
  EXPECT_THROW(max_multiplicity(e, q("2/3"), Rational(1)), Error);
  EXPECT_THROW(max_multiplicity(e, q("1/2"), q("1/4")), Error);
  for (const auto& [name, spec] : small_window_specs()) {
    auto window = truncate(spec, 13);
    for (const auto& x : small_grid()) {
      if (!in_monoid(spec, x)) continue;
      for (const auto& a : window.generators) {
        ASSERT_EQ(max_multiplicity(spec, a, x), descending_multiplicity(spec, a, x))
            << name << " a=" << a << " x=" << x;
      }
    }
  }
}

TEST(Primary, ElementaryCharacterization) {
  auto v = molecule_elementary(kAll, q("5/6"));
  EXPECT_EQ(v.status, MoleculeStatus::molecule);
  EXPECT_EQ(v.factorization, (PrimaryFactorization{{2, 1}, {3, 1}}));
  auto one = molecule_elementary(kAll, Rational(1));
  EXPECT_EQ(one.status, MoleculeStatus::not_molecule);
  EXPECT_EQ(one.integer_part, 1);
  auto c = molecule_elementary(kAll, q("11/6"));
  EXPECT_EQ(c.status, MoleculeStatus::not_molecule);
  EXPECT_EQ(c.integer_part, 1);
  EXPECT_EQ(molecule_elementary(kAll, q("1/6")).status, MoleculeStatus::not_member);
  EXPECT_THROW(molecule_elementary(PrimeSetDescriptor::list({2, 3}), q("5/6")), Error);
  auto e = elementary();
  for (const auto& x : small_grid()) {
    auto r = molecule_elementary(kAll, x);
    if (r.status == MoleculeStatus::not_member) continue;
    ASSERT_TRUE(r.conditions_agree()) << x;
    ASSERT_EQ(r.is_molecule, window_count(e, x) == 1) << x;
  }
}

TEST(Primary, InfiniteFactorizationFamily) {
  auto family = elementary_factorization_family(kAll, q("11/6"), 10);
  std::set<PrimaryFactorization> distinct(family.begin(), family.end());
  EXPECT_EQ(distinct.size(), 10u);
  for (const auto& z : family) EXPECT_EQ(evaluate(elementary(), z), q("11/6"));
  EXPECT_THROW(elementary_factorization_family(kAll, q("5/6"), 10), Error);
}

TEST(Primary, SufficientCondition) {
  EXPECT_TRUE(sufficient_molecule_check(elementary(), q("5/6")));
  EXPECT_FALSE(sufficient_molecule_check(elementary(), q("3/2")));
  auto p = odd_square_spec(10);
  EXPECT_FALSE(sufficient_molecule_check(p, q("11/3")));
  EXPECT_EQ(max_multiplicity(p, q("1/2"), q("11/3")), 2);
  EXPECT_THROW(sufficient_molecule_check(elementary(), q("1/4")), Error);
}

TEST(Primary, Classification) {
  auto e = classify_atoms(elementary());
  EXPECT_EQ(e.stable_families.size(), 1u);
  EXPECT_TRUE(e.unstable_generators.empty());
  auto p = classify_atoms(odd_square_spec(4));
  EXPECT_TRUE(p.stable_families.empty());
  EXPECT_EQ(p.unstable_generators,
            (std::vector<Rational>{q("1/2"), q("8/3"), q("24/5"), q("48/7"), q("120/11")}));
  auto m = classify_atoms(mixed_mod4());
  EXPECT_EQ(m.stable_families, (std::vector<std::size_t>{0}));
  EXPECT_EQ(m.unstable_families, (std::vector<std::size_t>{1}));
  // Equal numerators are merged before deciding stability.
  auto merged = classify_atoms(PrimaryMonoidSpec::parse("numerator=1 primes=list:2\nnumerator=1 primes=all:>=3\n"));
  EXPECT_EQ(merged.stable_families.size(), 2u);
}

TEST(Primary, AbsoluteInstability) {
  EXPECT_TRUE(is_absolutely_unstable(odd_square_spec(10), q("11/3")));
  auto m = mixed_mod4();
  EXPECT_TRUE(is_absolutely_unstable(m, Rational()));
  EXPECT_TRUE(is_absolutely_unstable(m, q("3/2")));
  // 3 = 2 * 3/2, and 3 = 15 * (1/5): the stable atom 1/5 divides it.
  EXPECT_FALSE(is_absolutely_unstable(m, Rational(3)));
  EXPECT_THROW(is_absolutely_unstable(m, q("1/5")), Error);
}

TEST(Primary, StableCharacterization) {
  auto e = elementary();
  EXPECT_TRUE(molecule_stable(e, q("5/6")));
  EXPECT_FALSE(molecule_stable(e, q("3/2")));
  EXPECT_FALSE(molecule_stable(e, Rational(1)));
  EXPECT_THROW(molecule_stable(mixed_mod4(), Rational(1)), Error);
  EXPECT_THROW(molecule_stable(e, q("1/4")), Error);
}

TEST(Primary, GeneralExamples) {
  auto p = odd_square_spec(10);
  auto v = molecule_general(p, q("11/3"));
  EXPECT_EQ(v.status, MoleculeStatus::molecule);
  EXPECT_EQ(v.stable_component, Rational());
  EXPECT_EQ(v.unstable_component, q("11/3"));
  EXPECT_EQ(describe(p, v.factorization), "2*(1/2) + 1*(8/3)");
  EXPECT_TRUE(divides(p, Rational(1), q("11/3")));
  auto one = molecule_general(p, Rational(1));
  EXPECT_EQ(one.status, MoleculeStatus::molecule);
  EXPECT_EQ(one.factorization, (PrimaryFactorization{{2, 2}}));
  auto e = molecule_general(elementary(), q("5/6"));
  EXPECT_EQ(e.status, MoleculeStatus::molecule);
  EXPECT_EQ(e.stable_component, q("5/6"));
  EXPECT_EQ(e.unstable_component, Rational());
  EXPECT_EQ(molecule_general(elementary(), q("1/4")).status, MoleculeStatus::not_member);
  EXPECT_EQ(molecule_general(elementary(), Rational()).status, MoleculeStatus::not_molecule);
}

TEST(Primary, GeneralMatchesWindowOracle) {
  for (const auto& [name, spec] : small_window_specs()) {
    bool stable = classify_atoms(spec).unstable_generators.empty();
    for (const auto& x : small_grid()) {
      auto v = molecule_general(spec, x);
      auto count = window_count(spec, x);
      if (count == 0) {
        ASSERT_EQ(v.status, MoleculeStatus::not_member) << name << " " << x;
        continue;
      }
      ASSERT_EQ(v.status == MoleculeStatus::molecule, count == 1) << name << " " << x;
      ASSERT_FALSE(v.discrepancy()) << name << " " << x;
      if (v.status == MoleculeStatus::molecule) {
        ASSERT_EQ(evaluate(spec, v.factorization), x);
      }
      if (sufficient_molecule_check(spec, x)) {
        ASSERT_EQ(v.status, MoleculeStatus::molecule);
      }
      if (stable) {
        ASSERT_EQ(molecule_stable(spec, x), count == 1) << name << " " << x;
      }
    }
  }
}

TEST(Primary, Doubling) {
  for (const auto& [name, spec] : small_window_specs()) {
    for (const auto& a : truncate(spec, 60).generators) {
      if (a.denominator() == 2) continue;
      EXPECT_EQ(molecule_general(spec, a + a).status, MoleculeStatus::molecule) << name << " " << a;
    }
  }
}

TEST(Primary, CertifiedCount) {
  auto e = elementary();
  auto inf = certified_factorization_count(e, q("11/6"), 5);
  EXPECT_TRUE(inf.infinite);
  ASSERT_EQ(inf.witnesses.size(), 2u);
  EXPECT_NE(inf.witnesses[0], inf.witnesses[1]);
  for (const auto& z : inf.witnesses) EXPECT_EQ(evaluate(e, z), q("11/6"));
  auto one = certified_factorization_count(e, q("5/6"), 5);
  EXPECT_FALSE(one.infinite);
  EXPECT_EQ(one.count, 1u);
  EXPECT_THROW(certified_count(truncate(e, 3), q("1/5"), 2), Error);
  auto p = odd_square_spec(10);
  EXPECT_EQ(certified_factorization_count(p, q("11/3"), 5).count, 1u);
  EXPECT_EQ(certified_factorization_count(p, Rational(8), 100).count,
            oracle::rational_count(truncate(p, 7).generators, Rational(8), 100));
}
