#include <gtest/gtest.h>

#include "inclab/energy.hpp"
#include "inclab/oracle.hpp"
#include "test_util.hpp"

using namespace inclab;
using test::field_set;
using test::grid_set;

namespace {

ResidueSet full_field(std::uint64_t q) {
  std::vector<std::int64_t> all(q);
  for (std::uint64_t i = 0; i < q; ++i) all[i] = static_cast<std::int64_t>(i);
  return field_set(q, all);
}

}  // namespace

TEST(AdditiveEnergy, Examples) {
  EXPECT_EQ(additive_energy_k(grid_set({0, 1, 2}), grid_set({0, 1, 2}), 2), BigInt(19));
  EXPECT_EQ(additive_energy_k(field_set(7, {0, 1, 2}), field_set(7, {0, 1, 2}), 2), BigInt(19));
  for (unsigned k : {2u, 3u, 5u}) {
    EXPECT_EQ(additive_energy_k(field_set(11, {4}), field_set(11, {4}), k), BigInt(1));
    const auto f = full_field(11);
    EXPECT_EQ(additive_energy_k(f, f, k), big_pow(BigInt(11), k + 1));
  }
  EXPECT_THROW(additive_energy_k(field_set(7, {1}), field_set(7, {1}), 1), std::invalid_argument);
  EXPECT_THROW(additive_energy_k(field_set(7, {1}), grid_set({1}), 2), std::invalid_argument);
}

TEST(AdditiveEnergy, MatchesOracleAndStrategies) {
  Rng rng(51);
  for (int t = 0; t < 100; ++t) {
    const PrimeModulus p(test::small_primes(5, 101)[rng.below(24)]);
    const auto a = test::random_field_set(rng, p, 12), b = test::random_field_set(rng, p, 12);
    const auto want2 = oracle::additive_energy_quadruples(a, b);
    for (auto s : {CorrelationStrategy::naive_scalar, CorrelationStrategy::sparse, CorrelationStrategy::ntt})
      ASSERT_EQ(additive_energy_k(a, b, 2, s), want2);
    for (unsigned k : {2u, 3u, 4u}) ASSERT_EQ(additive_energy_k(a, b, k), oracle::additive_energy_k(a, b, k));
    const auto ga = test::random_grid_set(rng, 40, 10), gb = test::random_grid_set(rng, 40, 10);
    ASSERT_EQ(additive_energy_k(ga, gb, 2), oracle::additive_energy_quadruples(ga, gb));
    ASSERT_EQ(additive_energy_k(ga, gb, 3), oracle::additive_energy_k(ga, gb, 3));
  }
}

TEST(AdditiveEnergy, MonotoneInKAndBounded) {
  Rng rng(52);
  for (int t = 0; t < 60; ++t) {
    const PrimeModulus p(101);
    const auto a = test::random_field_set(rng, p, 30);
    const BigInt n(a.size());
    for (unsigned k = 2; k < 6; ++k) {
      const auto e = additive_energy_k(a, a, k), e1 = additive_energy_k(a, a, k + 1);
      EXPECT_LE(e1, n * e);
      EXPECT_GE(e, big_pow(n, k));
      EXPECT_LE(e, big_pow(n, k + 1));
    }
  }
}

TEST(AdditiveEnergy, DifferenceCountsSumToProduct) {
  const auto a = field_set(13, {1, 2, 7}), b = field_set(13, {0, 5});
  const auto d = difference_counts(a, b);
  EXPECT_EQ(d.total(), BigInt(6));
  EXPECT_EQ(d[1], 1u);  // 1 - 0
  EXPECT_EQ(d[2], 2u);  // 2 - 0, 7 - 5
}

TEST(MultEnergy, Examples) {
  EXPECT_EQ(multiplicative_energy_k(field_set(13, {1, 2, 4}), field_set(13, {1, 2, 4}), 2), BigInt(19));
  EXPECT_EQ(multiplicative_energy_k(field_set(13, {5}), field_set(13, {5}), 3), BigInt(1));
  EXPECT_EQ(multiplicative_energy_k(field_set(13, {1, 12}), field_set(13, {1, 12}), 2), BigInt(8));
  // Zeros are discarded.
  EXPECT_EQ(multiplicative_energy_k(field_set(13, {0, 1, 2, 4}), field_set(13, {0, 1, 2, 4}), 2), BigInt(19));
  EXPECT_THROW(multiplicative_energy_k(field_set(13, {0}), field_set(13, {1}), 2), std::invalid_argument);
  EXPECT_THROW(multiplicative_energy_k(field_set(13, {1}), field_set(13, {1}), 1), std::invalid_argument);
  EXPECT_THROW(multiplicative_energy_k(grid_set({1}), grid_set({1}), 2), std::invalid_argument);
}

TEST(MultEnergy, MatchesOracle) {
  Rng rng(53);
  for (int t = 0; t < 100; ++t) {
    const PrimeModulus p(test::small_primes(5, 101)[rng.below(24)]);
    const auto a = test::random_field_set(rng, p, 12), b = test::random_field_set(rng, p, 12);
    if (a.without_zero().empty() || b.without_zero().empty()) continue;
    ASSERT_EQ(multiplicative_energy_k(a, b, 2), oracle::mult_energy_quadruples(a, b));
    for (unsigned k : {2u, 3u, 4u}) ASSERT_EQ(multiplicative_energy_k(a, b, k), oracle::mult_energy_k(a, b, k));
  }
}

TEST(MultEnergy, RatioCountsAndDiscreteLog) {
  const PrimeModulus p(13);
  const DiscreteLog dl(p);
  EXPECT_EQ(dl.generator(), primitive_root(p));
  for (std::uint32_t x = 1; x < 13; ++x) EXPECT_EQ(dl.exp(dl.log(x)), x);
  const auto r = ratio_counts(field_set(13, {0, 2, 4}), field_set(13, {1, 2}));
  EXPECT_EQ(r[0], 0u);
  EXPECT_EQ(r.total(), BigInt(4));
  EXPECT_EQ(r[2], 2u);  // 2/1, 4/2
}

TEST(ShiftedMultEnergy, MatchesOracleAndBounds) {
  Rng rng(54);
  for (int t = 0; t < 60; ++t) {
    const PrimeModulus p(test::small_primes(5, 61)[rng.below(16)]);
    const auto a = test::random_field_set(rng, p, 9, 2);
    for (unsigned k : {2u, 3u}) {
      const auto got = shifted_mult_energy_max(a, k), want = oracle::shifted_mult_energy_max(a, k);
      ASSERT_EQ(got.value, want.value);
      ASSERT_EQ(got.shift, want.shift);
      if (!a.without_zero().empty()) {
        EXPECT_GE(got.value, multiplicative_energy_k(a, a, k));
      }
    }
    EXPECT_LE(shifted_mult_energy_max(a, 2).value, big_pow(BigInt(a.size()), 3));
  }
}

TEST(ShiftedMultEnergy, TwoElementSetsGiveEight) {
  Rng rng(55);
  for (int t = 0; t < 30; ++t) {
    const PrimeModulus p(test::small_primes(5, 101)[rng.below(24)]);
    EXPECT_EQ(shifted_mult_energy_max(test::random_field_set(rng, p, 2, 2), 2).value, BigInt(8));
  }
  EXPECT_THROW(shifted_mult_energy_max(field_set(7, {1}), 2), std::invalid_argument);
}

TEST(ShiftedMultEnergy, WorkersAgree) {
  Rng rng(56);
  const auto a = test::random_field_set(rng, PrimeModulus(401), 30, 30);
  const auto ref = shifted_mult_energy_max(a, 2, 1);
  for (unsigned w : {2u, 5u}) {
    const auto got = shifted_mult_energy_max(a, 2, w);
    EXPECT_EQ(got.value, ref.value);
    EXPECT_EQ(got.shift, ref.shift);
  }
}

TEST(GridShiftedEnergy, Examples) {
  const auto e = grid_shifted_mult_energy_max(grid_set({1, 2}));
  EXPECT_EQ(e.value, BigInt(8));
  EXPECT_EQ(e.shift, Rational(3, 2));
  EXPECT_EQ(grid_mult_energy(grid_set({1, 2}), Rational(0)), BigInt(6));
  EXPECT_EQ(grid_mult_energy(grid_set({1, 2, 4}), Rational(0)), BigInt(19));
  // Ratios of {+-1, +-3}: +-1 four times each, +-3 and +-1/3 twice each.
  EXPECT_EQ(grid_mult_energy(grid_set({-3, -1, 1, 3}), Rational(0)), BigInt(48));
  std::vector<std::int64_t> big(kMaxGridShiftSet + 1);
  for (std::size_t i = 0; i < big.size(); ++i) big[i] = static_cast<std::int64_t>(i);
  EXPECT_THROW(grid_shifted_mult_energy_max(grid_set(big)), std::invalid_argument);
}

TEST(GridShiftedEnergy, DominatesRandomRationalShifts) {
  Rng rng(57);
  for (int t = 0; t < 40; ++t) {
    const auto a = test::random_grid_set(rng, 25, 7, 2);
    const auto e = grid_shifted_mult_energy_max(a);
    EXPECT_EQ(grid_mult_energy(a, e.shift), e.value);
    const auto n = static_cast<std::int64_t>(a.size());
    EXPECT_GE(e.value, BigInt(2 * n * n - n));
    EXPECT_LE(e.value, big_pow(BigInt(n), 3));
    for (int s = 0; s < 200; ++s) {
      const Rational shift(static_cast<std::int64_t>(rng.below(121)) - 30, 1 + static_cast<std::int64_t>(rng.below(4)));
      EXPECT_LE(grid_mult_energy(a, shift), e.value) << to_string(shift);
    }
  }
}

TEST(BalancedEnergy, ExamplesAndOracle) {
  EXPECT_EQ(balanced_additive_energy(full_field(7)), Rational(0));
  EXPECT_EQ(balanced_additive_energy(field_set(3, {0})), Rational(2, 3));
  Rng rng(58);
  for (int t = 0; t < 60; ++t) {
    const PrimeModulus p(test::small_primes(5, 13)[rng.below(4)]);
    const auto a = test::random_field_set(rng, p, 5);
    ASSERT_EQ(balanced_additive_energy(a), oracle::balanced_energy_quadruples(a));
  }
}

TEST(BalancedEnergy, ArraysHaveExactEntries) {
  const auto a = field_set(5, {1, 3});
  const auto e = entries(balanced_array(a));
  ASSERT_EQ(e.size(), 5u);
  EXPECT_EQ(e[0], Rational(-2, 5));
  EXPECT_EQ(e[1], Rational(3, 5));
  const auto pl = entries(plain_array(a));
  EXPECT_EQ(pl[3], Rational(1));
  EXPECT_EQ(pl[4], Rational(0));
}

TEST(BalancedShiftedEnergy, MatchesOracle) {
  Rng rng(59);
  for (int t = 0; t < 25; ++t) {
    const PrimeModulus p(test::small_primes(5, 23)[rng.below(7)]);
    const auto a = test::random_field_set(rng, p, 6);
    const auto got = balanced_shifted_mult_energy_max(a), want = oracle::balanced_shifted_mult_energy_max(a);
    ASSERT_EQ(got.value, want.value);
    ASSERT_EQ(got.shift, want.shift);
  }
}

TEST(AlternatingEnergy, Examples) {
  EXPECT_EQ(alternating_energy_T(field_set(5, {0, 1}), 4), BigInt(70));
  EXPECT_EQ(oracle::alternating_energy_T(field_set(5, {0, 1}), 4), BigInt(70));
  for (unsigned k : {2u, 4u, 6u}) EXPECT_EQ(alternating_energy_T(field_set(11, {3}), k), BigInt(1));
  EXPECT_THROW(alternating_energy_T(field_set(5, {0, 1}), 3), std::invalid_argument);
  EXPECT_THROW(alternating_energy_T(field_set(5, {0, 1}), 0), std::invalid_argument);
}

TEST(AlternatingEnergy, T2IsAdditiveEnergyAndMatchesOracle) {
  Rng rng(60);
  for (int t = 0; t < 100; ++t) {
    const PrimeModulus p(test::small_primes(5, 61)[rng.below(16)]);
    const auto a = test::random_field_set(rng, p, 10);
    ASSERT_EQ(alternating_energy_T(a, 2), additive_energy_k(a, a, 2));
    const auto small = test::random_field_set(rng, p, 4);
    ASSERT_EQ(alternating_energy_T(small, 4), oracle::alternating_energy_T(small, 4));
  }
}

TEST(AlternatingEnergy, OffsetArraysMatchOracle) {
  Rng rng(61);
  for (int t = 0; t < 30; ++t) {
    const PrimeModulus p(test::small_primes(5, 13)[rng.below(4)]);
    const auto a = test::random_field_set(rng, p, 6);
    for (const auto& f : {balanced_array(a), plain_array(a)}) {
      const auto e = entries(f);
      ASSERT_EQ(alternating_energy_T(f, 2), oracle::alternating_energy_T(e, 2));
      ASSERT_EQ(alternating_energy_T(f, 4), oracle::alternating_energy_T(e, 4));
    }
    ASSERT_EQ(alternating_energy_T(balanced_array(a), 2), balanced_additive_energy(a));
  }
}

TEST(AffineEnergy, Examples) {
  const PrimeModulus p(7);
  const std::vector<AffineElement> id = {affine_identity()};
  EXPECT_EQ(affine_T(id, 2, p), BigInt(1));
  EXPECT_EQ(affine_T(id, 4, p), BigInt(1));
  const std::vector<AffineElement> tr = {{1, 0}, {1, 1}};
  EXPECT_EQ(affine_T(tr, 2, p), BigInt(6));
  EXPECT_THROW(affine_T(tr, 3, p), std::invalid_argument);
  EXPECT_THROW(affine_T(std::vector<AffineElement>{{0, 1}}, 2, p), std::invalid_argument);
}

TEST(AffineEnergy, GroupLaw) {
  const PrimeModulus p(11);
  const AffineElement f{3, 4}, g{5, 9};
  for (std::uint32_t x = 0; x < 11; ++x) EXPECT_EQ(apply(compose(f, g, p), x, p), apply(f, apply(g, x, p), p));
  EXPECT_EQ(compose(f, inverse(f, p), p), affine_identity());
}

TEST(AffineEnergy, MatchesOracleAndLowerBound) {
  Rng rng(62);
  for (int t = 0; t < 40; ++t) {
    const PrimeModulus p(test::small_primes(5, 31)[rng.below(9)]);
    std::vector<WeightedAffine> l;
    std::vector<AffineElement> plain;
    const std::size_t n = 1 + rng.below(30);
    for (std::size_t i = 0; i < n; ++i) {
      const AffineElement g{1 + static_cast<std::uint32_t>(rng.below(p.value() - 1)),
                            static_cast<std::uint32_t>(rng.below(p.value()))};
      l.push_back({g, static_cast<std::int64_t>(rng.below(7)) - 3});
      plain.push_back(g);
    }
    ASSERT_EQ(affine_T(l, 2, p), oracle::affine_T2(l, p));
    std::sort(plain.begin(), plain.end());
    plain.erase(std::unique(plain.begin(), plain.end()), plain.end());
    const auto t2 = affine_T(plain, 2, p);
    EXPECT_GE(t2, BigInt(plain.size() * plain.size()));
    // (r * r)(identity) = T_2.
    EXPECT_GE(affine_T(plain, 4, p), t2 * t2);
  }
}

TEST(AffineEnergy, BalancedCartesianMatchesSlopeFactorization) {
  Rng rng(63);
  for (int t = 0; t < 30; ++t) {
    const PrimeModulus p(test::small_primes(5, 31)[rng.below(9)]);
    const auto x = test::random_field_set(rng, p, 5).without_zero();
    const auto y = test::random_field_set(rng, p, 6);
    if (x.empty()) continue;
    const auto l = balanced_cartesian(x, y);
    const Rational t2(affine_T(l, 2, p), big_pow(BigInt(p.value()), 4));
    ASSERT_EQ(t2, oracle::cartesian_T2(x, y));
  }
}
