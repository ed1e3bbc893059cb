#include <random>

#include <gtest/gtest.h>

#include "molekul/primes.hpp"
#include "molekul/rational.hpp"

using namespace molekul;

TEST(Rational, ReducesOnConstruction) {
  auto q = make_rational(10, 4);
  EXPECT_EQ(q.numerator(), 5);
  EXPECT_EQ(q.denominator(), 2);
  EXPECT_EQ(make_rational(0, 7).denominator(), 1);
  EXPECT_EQ(make_rational(21, 1).to_string(), "21");
}

TEST(Rational, RejectsBadInput) {
  EXPECT_THROW(make_rational(1, 0), Error);
  try {
    make_rational(-1, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NegativeInput);
  }
  try {
    make_rational(1, 0);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroDenominator);
  }
  EXPECT_THROW(Rational(1) - Rational(2), Error);
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("21"), Rational::parse("21/1"));
  EXPECT_EQ(Rational::parse("6/4").to_string(), "3/2");
  EXPECT_THROW(Rational::parse("1/"), Error);
  EXPECT_THROW(Rational::parse("x"), Error);
  auto list = parse_rational_list("1/2, 3/4");
  ASSERT_EQ(list.size(), 2u);
  EXPECT_EQ(list[1], make_rational(3, 4));
}

TEST(Valuation, Examples) {
  EXPECT_EQ(padic_valuation(2, make_rational(3, 4)), Valuation::finite(-2));
  EXPECT_EQ(padic_valuation(3, Rational(9)), Valuation::finite(2));
  EXPECT_TRUE(padic_valuation(5, Rational()).is_infinite());
  EXPECT_EQ(padic_valuation(5, Rational()).to_string(), "inf");
  EXPECT_THROW(padic_valuation(4, Rational(1)), Error);
  EXPECT_LT(Valuation::finite(100), Valuation::infinity());
}

TEST(Valuation, UltrametricOnRandomSums) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(0, 60), den(1, 60);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Rational> terms;
    Rational sum;
    for (int i = 0; i < 4; ++i) {
      terms.push_back(make_rational(num(rng), den(rng)));
      sum += terms.back();
    }
    if (sum.is_zero()) continue;
    for (std::uint64_t p : {2, 3, 5, 7}) {
      Valuation lowest = Valuation::infinity();
      for (const auto& t : terms) lowest = std::min(lowest, padic_valuation(p, t));
      EXPECT_GE(padic_valuation(p, sum), lowest);
    }
  }
}

TEST(Rational, RoundTripAndScaling) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> v(1, 1000);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = make_rational(v(rng), v(rng));
    auto b = make_rational(v(rng), v(rng));
    EXPECT_EQ(a + b - b, a);
    BigInt k = v(rng);
    EXPECT_EQ(make_rational(a.numerator() * k, a.denominator() * k), a);
  }
}

TEST(Primes, Stream) {
  EXPECT_EQ(nth_prime(1), 2u);
  EXPECT_EQ(primes_up_to(12), (std::vector<std::uint64_t>{2, 3, 5, 7, 11}));
  EXPECT_FALSE(is_prime(std::uint64_t{91}));
  EXPECT_TRUE(is_prime(std::uint64_t{18446744073709551557ull}));
  EXPECT_FALSE(is_prime(std::uint64_t{3215031751ull}));  // strong pseudoprime to 2,3,5,7
  EXPECT_EQ(first_primes(50).back(), 229u);
}

TEST(Primes, MillerRabinAgreesWithSieve) {
  auto sieve = primes_up_to(200000);
  std::vector<char> flag(200001, 0);
  for (auto p : sieve) flag[p] = 1;
  for (std::uint64_t n = 0; n <= 200000; ++n) ASSERT_EQ(is_prime(n), flag[n] == 1) << n;
}

TEST(Primes, Factorize) {
  auto f = factorize(BigInt(360));
  EXPECT_EQ(f, (std::vector<std::pair<std::uint64_t, int>>{{2, 3}, {3, 2}, {5, 1}}));
  BigInt big = BigInt(1000000007) * BigInt(998244353);
  auto g = factorize(big);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].first, 998244353u);
}
