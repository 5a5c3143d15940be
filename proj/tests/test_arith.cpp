#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "parabola/arith.hpp"
#include "parabola/gaussian_unit.hpp"

using namespace parabola;

namespace {

std::vector<PrimePower> pp(std::initializer_list<std::pair<u64, unsigned>> list) {
  std::vector<PrimePower> out;
  for (auto [p, e] : list) out.push_back({p, e});
  return out;
}

bool same_factors(const FactoredInteger& f, const std::vector<PrimePower>& expect) {
  if (f.factors().size() != expect.size()) return false;
  for (std::size_t i = 0; i < expect.size(); ++i) {
    if (f.factors()[i].prime != expect[i].prime || f.factors()[i].exponent != expect[i].exponent) return false;
  }
  return true;
}

// Trial-division oracle.
std::vector<PrimePower> trial_factor(u64 n) {
  std::vector<PrimePower> out;
  for (u64 p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::vector<u64> brute_roots(u64 m, u64 q) {
  std::vector<u64> out;
  for (u64 x = 0; x < q; ++x) {
    if (x * x % q == m % q) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST(Factorize, Examples) {
  EXPECT_TRUE(same_factors(factorize(12), pp({{2, 2}, {3, 1}})));
  EXPECT_TRUE(factorize(1).factors().empty());
  EXPECT_EQ(factorize(1).value(), 1u);
  EXPECT_TRUE(same_factors(factorize(600851475143ULL), pp({{71, 1}, {839, 1}, {1471, 1}, {6857, 1}})));
}

TEST(Factorize, RejectsOutOfRange) {
  EXPECT_THROW(factorize(0), std::invalid_argument);
  EXPECT_THROW(factorize(kMaxOperand), std::invalid_argument);
  EXPECT_THROW(factorize(~u64{0}), std::invalid_argument);
}

TEST(Factorize, LargeSemiprimes) {
  // 2^31 - 1 and the largest prime below 2^32; product just under 2^63.
  EXPECT_TRUE(same_factors(factorize(2147483647ULL * 4294967291ULL), pp({{2147483647ULL, 1}, {4294967291ULL, 1}})));
  EXPECT_TRUE(same_factors(factorize(2147483647ULL * 2147483647ULL), pp({{2147483647ULL, 2}})));
  EXPECT_TRUE(same_factors(factorize(kMaxOperand - 1), trial_factor(kMaxOperand - 1)));
}

TEST(Factorize, MatchesTrialDivision) {
  for (u64 n = 1; n <= 20000; ++n) ASSERT_TRUE(same_factors(factorize(n), trial_factor(n))) << n;
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 300; ++i) {
    const u64 n = rng() % (u64{1} << 40) + 1;
    ASSERT_TRUE(same_factors(factorize(n), trial_factor(n))) << n;
  }
}

TEST(Factorize, ProductRecoversValueForWideInputs) {
  std::mt19937_64 rng(777);
  for (int i = 0; i < 300; ++i) {
    const u64 n = rng() % (kMaxOperand - 1) + 1;
    const auto f = factorize(n);
    u64 prod = 1;
    for (const auto& [p, e] : f.factors()) {
      ASSERT_TRUE(is_prime(p)) << p;
      prod *= checked_pow(p, e);
    }
    ASSERT_EQ(prod, n);
  }
}

TEST(Factorize, FromFactorsValidates) {
  EXPECT_EQ(FactoredInteger::from_factors(pp({{2, 3}, {5, 1}})).value(), 40u);
  EXPECT_THROW(FactoredInteger::from_factors(pp({{3, 0}})), std::invalid_argument);
  EXPECT_THROW(FactoredInteger::from_factors(pp({{2, 64}})), std::overflow_error);
  EXPECT_THROW(FactoredInteger::from_factors(pp({{5, 1}, {2, 1}})), std::invalid_argument);
}

TEST(FactorSieve, AgreesWithFactorize) {
  const FactorSieve sieve(50000);
  for (u64 n = 1; n <= 50000; ++n) ASSERT_TRUE(same_factors(sieve.factor(n), factorize(n).factors())) << n;
}

TEST(IsPrime, SmallAndStrongPseudoprimes) {
  std::vector<bool> composite(10001, false);
  for (u64 p = 2; p <= 100; ++p)
    for (u64 k = p * p; k <= 10000; k += p) composite[k] = true;
  for (u64 n = 2; n <= 10000; ++n) ASSERT_EQ(is_prime(n), !composite[n]) << n;
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(3215031751ULL));         // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_FALSE(is_prime(3825123056546413051ULL));  // strong pseudoprime to bases up to 23
  EXPECT_TRUE(is_prime(kMaxOperand - 25));        // largest prime below 2^63
}

TEST(Jacobi, Examples) {
  EXPECT_EQ(jacobi(1, 3), 1);
  EXPECT_EQ(jacobi(2, 15), 1);
  EXPECT_EQ(jacobi(3, 9), 0);
  EXPECT_EQ(jacobi(-1, 7), -1);
  EXPECT_EQ(jacobi(0, 1), 1);
}

TEST(Jacobi, RejectsEvenOrNonPositiveModulus) {
  EXPECT_THROW(jacobi(1, 4), std::invalid_argument);
  EXPECT_THROW(jacobi(1, 0), std::invalid_argument);
  EXPECT_THROW(jacobi(1, -3), std::invalid_argument);
}

TEST(Jacobi, MatchesLegendreByResidueEnumeration) {
  // Legendre symbols from explicit residue sets mod each odd prime.
  auto residues = [](u64 p) {
    std::vector<int> leg(p, -1);
    leg[0] = 0;
    for (u64 x = 1; x < p; ++x) leg[x * x % p] = 1;
    return leg;
  };
  std::vector<std::vector<int>> table(1000);
  for (u64 p = 3; p < 1000; p += 2) {
    if (is_prime(p)) table[p] = residues(p);
  }
  for (i64 n = 1; n <= 999; n += 2) {
    const auto f = trial_factor(static_cast<u64>(n));
    for (i64 a = -n; a <= 2 * n; ++a) {
      int expect = 1;
      for (const auto& [p, e] : f) {
        const int l = table[p][reduce_mod(a, p)];
        for (unsigned k = 0; k < e; ++k) expect *= l;
      }
      ASSERT_EQ(jacobi(a, n), expect) << a << "/" << n;
    }
  }
}

TEST(Jacobi, PeriodicAndMultiplicativeInTop) {
  for (i64 n = 1; n <= 301; n += 2) {
    for (i64 a = 0; a < n; ++a) {
      ASSERT_EQ(jacobi(a, n), jacobi(a + 7 * n, n));
      for (i64 b = 0; b < 40; ++b) ASSERT_EQ(jacobi(a * b, n), jacobi(a, n) * jacobi(b, n));
    }
  }
}

TEST(ArithmeticFunctions, Examples) {
  EXPECT_EQ(square_part(factorize(7)), 1u);
  EXPECT_EQ(square_part(factorize(12)), 2u);
  EXPECT_EQ(square_part(factorize(36)), 6u);
  EXPECT_EQ(sigma(factorize(6)), 12u);
  EXPECT_EQ(num_divisors(factorize(12)), 6u);
  EXPECT_EQ(mobius(factorize(4)), 0);
  EXPECT_EQ(mobius(factorize(30)), -1);
  EXPECT_EQ(mobius(factorize(1)), 1);
}

TEST(ArithmeticFunctions, SquarePartIsMaximal) {
  const FactorSieve sieve(100000);
  for (u64 n = 1; n <= 100000; ++n) {
    const u64 r = square_part(sieve.factor(n));
    ASSERT_EQ(n % (r * r), 0u) << n;
    const u64 rest = n / (r * r);
    for (u64 k = 2; k * k <= rest; ++k) ASSERT_NE(rest % (k * k), 0u) << n;
  }
}

TEST(ArithmeticFunctions, MatchDivisorEnumeration) {
  for (u64 n = 1; n <= 3000; ++n) {
    const auto f = factorize(n);
    std::vector<u64> divs;
    u64 sum = 0;
    for (u64 d = 1; d <= n; ++d) {
      if (n % d == 0) {
        divs.push_back(d);
        sum += d;
      }
    }
    ASSERT_EQ(divisors(f), divs) << n;
    ASSERT_EQ(sigma(f), sum) << n;
    ASSERT_EQ(num_divisors(f), divs.size()) << n;
    bool squarefree = true;
    for (u64 k = 2; k * k <= n; ++k) squarefree = squarefree && n % (k * k) != 0;
    ASSERT_EQ(mobius(f), squarefree ? (f.factors().size() % 2 ? -1 : 1) : 0) << n;
  }
}

TEST(ModSqrt, Examples) {
  EXPECT_EQ(mod_sqrt(2, 7, 1), (std::vector<u64>{3, 4}));
  EXPECT_EQ(mod_sqrt(1, 2, 3), (std::vector<u64>{1, 3, 5, 7}));
  EXPECT_EQ(mod_sqrt(0, 2, 2), (std::vector<u64>{0, 2}));
}

TEST(ModSqrt, PrimePowersMatchBruteForce) {
  const std::pair<u64, unsigned> moduli[] = {{2, 1}, {2, 2},  {2, 3}, {2, 4}, {2, 7}, {2, 11}, {3, 1}, {3, 4},
                                             {3, 7}, {5, 5},  {7, 4}, {11, 3}, {13, 2}, {17, 1}, {97, 2}, {1009, 1}};
  for (auto [p, e] : moduli) {
    const u64 pe = checked_pow(p, e);
    for (u64 m = 0; m < pe; ++m) {
      const auto roots = mod_sqrt(m, p, e);
      ASSERT_EQ(roots, brute_roots(m, pe)) << m << " mod " << p << "^" << e;
      ASSERT_EQ(mod_sqrt_count(m, p, e), roots.size());
    }
  }
}

TEST(ModSqrt, LargePrimeRoots) {
  const u64 p = 4611686018427387847ULL;  // 2^62 - 57
  ASSERT_TRUE(is_prime(p));
  std::mt19937_64 rng(99);
  for (int i = 0; i < 50; ++i) {
    const u64 x = rng() % p;
    const u64 m = mul_mod(x, x, p);
    const auto roots = mod_sqrt(m, p, 1);
    ASSERT_TRUE(std::find(roots.begin(), roots.end(), x) != roots.end());
    for (u64 r : roots) ASSERT_EQ(mul_mod(r, r, p), m);
  }
}

TEST(SqrtMod, Examples) {
  EXPECT_EQ(sqrt_mod(4, factorize(15)), (std::vector<u64>{2, 7, 8, 13}));
  EXPECT_EQ(sqrt_mod(0, factorize(9)), (std::vector<u64>{0, 3, 6}));
  EXPECT_TRUE(sqrt_mod(2, factorize(15)).empty());
  EXPECT_EQ(sqrt_mod(0, factorize(1)), (std::vector<u64>{0}));
}

TEST(SqrtMod, MatchesBruteForceRootSets) {
  // Every residue for every q <= 10^4, bucketed from one pass over x.
  const FactorSieve sieve(10000);
  for (u64 q = 1; q <= 10000; ++q) {
    std::vector<std::vector<u64>> expect(q);
    for (u64 x = 0; x < q; ++x) expect[x * x % q].push_back(x);
    const auto fq = sieve.factor(q);
    for (u64 m = 0; m < q; ++m) {
      ASSERT_EQ(sqrt_mod_count(m, fq), expect[m].size()) << m << " mod " << q;
      if (expect[m].empty()) continue;
      ASSERT_EQ(sqrt_mod(m, fq), expect[m]) << m << " mod " << q;
    }
  }
}

TEST(SqrtMod, NonResiduesGiveEmptySets) {
  const FactorSieve sieve(3000);
  for (u64 q = 1; q <= 3000; ++q) {
    std::vector<bool> square(q, false);
    for (u64 x = 0; x < q; ++x) square[x * x % q] = true;
    const auto fq = sieve.factor(q);
    for (u64 m = 0; m < q; ++m) {
      if (!square[m]) {
        ASSERT_TRUE(sqrt_mod(m, fq).empty()) << m << " mod " << q;
      }
    }
  }
}

TEST(Modular, InverseAndPow) {
  for (u64 m = 2; m < 200; ++m) {
    for (u64 a = 1; a < m; ++a) {
      if (std::gcd(a, m) != 1) {
        EXPECT_THROW(inverse_mod(a, m), std::invalid_argument);
        continue;
      }
      ASSERT_EQ(a * inverse_mod(a, m) % m, 1u);
    }
  }
  EXPECT_EQ(pow_mod(3, 200, 1000003), pow_mod(9, 100, 1000003));
  EXPECT_EQ(isqrt(kMaxOperand - 1), 3037000499ULL);
  EXPECT_THROW(checked_pow(10, 20), std::overflow_error);
}

TEST(GaussianUnits, TagsAreClosedUnderProducts) {
  std::set<std::string_view> names;
  for (auto u : kAllGaussianUnits) {
    names.insert(to_string(u));
    EXPECT_LE(norm(u), 2);
    EXPECT_EQ(from_gaussian(to_gaussian(u)), u);
    if (norm(u) == 1) {
      EXPECT_EQ(u * inverse(u), GaussianUnit::one);
    }
  }
  EXPECT_EQ(names.size(), 9u);
  EXPECT_EQ(GaussianUnit::one_plus_i * GaussianUnit::i, GaussianUnit::minus_one_plus_i);
  EXPECT_EQ(negate(GaussianUnit::i), GaussianUnit::minus_i);
  EXPECT_THROW(inverse(GaussianUnit::one_plus_i), std::invalid_argument);
}
