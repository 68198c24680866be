#include <gtest/gtest.h>

#include "inclab/correlation.hpp"
#include "inclab/rng.hpp"
#include "test_util.hpp"

using namespace inclab;

namespace {

const CorrelationStrategy kAll[] = {CorrelationStrategy::automatic, CorrelationStrategy::naive_scalar,
                                    CorrelationStrategy::naive_simd, CorrelationStrategy::sparse,
                                    CorrelationStrategy::ntt};

CountArray random_counts(Rng& rng, std::size_t p, std::uint64_t bound, double density) {
  CountArray a(p);
  for (std::size_t i = 0; i < p; ++i) {
    if (static_cast<double>(rng.below(1000)) < density * 1000) a[i] = rng.below(bound);
  }
  return a;
}

CountArray direct_correlation(const CountArray& u, const CountArray& v, std::size_t p) {
  CountArray d(p);
  for (std::size_t x = 0; x < p; ++x)
    for (std::size_t a = 0; a < p; ++a) d[x] += u[a] * v[(a + p - x) % p];
  return d;
}

}  // namespace

TEST(Correlation, AllStrategiesAgreeWithDefinition) {
  Rng rng(21);
  for (auto q : test::small_primes(3, 300)) {
    const PrimeModulus p(q);
    for (double density : {0.05, 0.5, 1.0}) {
      const auto u = random_counts(rng, q, 1000, density), v = random_counts(rng, q, 1000, density);
      const auto want = direct_correlation(u, v, q);
      for (auto s : kAll) ASSERT_EQ(cyclic_correlation(u, v, p, s), want) << q << " " << static_cast<int>(s);
    }
  }
}

TEST(Correlation, ConvolutionIsCorrelationWithReflection) {
  Rng rng(22);
  const PrimeModulus p(101);
  const auto u = random_counts(rng, 101, 50, 0.3), v = random_counts(rng, 101, 50, 0.3);
  CountArray refl(101);
  for (std::size_t i = 0; i < 101; ++i) refl[(101 - i) % 101] = v[i];
  const auto want = cyclic_correlation(u, refl, p, CorrelationStrategy::naive_scalar);
  for (auto s : kAll) EXPECT_EQ(cyclic_convolution(u, v, p, s), want);
}

TEST(Correlation, LargePrimeNttMatchesSparse) {
  Rng rng(23);
  const PrimeModulus p(100003);
  const auto u = random_counts(rng, 100003, 3, 0.01), v = random_counts(rng, 100003, 3, 0.01);
  EXPECT_EQ(cyclic_correlation(u, v, p, CorrelationStrategy::ntt),
            cyclic_correlation(u, v, p, CorrelationStrategy::sparse));
}

TEST(Correlation, LargeEntriesStayExact) {
  const PrimeModulus p(7);
  CountArray u(7), v(7);
  for (int i = 0; i < 7; ++i) u[i] = v[i] = (std::uint64_t{1} << 29) + i;
  const auto want = cyclic_correlation(u, v, p, CorrelationStrategy::naive_scalar);
  for (auto s : kAll) EXPECT_EQ(cyclic_correlation(u, v, p, s), want);
}

TEST(Correlation, TotalIsProductOfTotals) {
  Rng rng(24);
  const PrimeModulus p(211);
  const auto u = random_counts(rng, 211, 100, 0.4), v = random_counts(rng, 211, 100, 0.4);
  EXPECT_EQ(cyclic_correlation(u, v, p).total(), u.total() * v.total());
}

TEST(Correlation, Errors) {
  const PrimeModulus p(7);
  EXPECT_THROW(cyclic_correlation(CountArray(7), CountArray(5), p), std::invalid_argument);
  CountArray big(7);
  big[0] = ~std::uint64_t{0};
  EXPECT_THROW(cyclic_correlation(big, big, p, CorrelationStrategy::naive_scalar), std::overflow_error);
}

TEST(Correlation, IndicatorAndSumOfSquares) {
  const PrimeModulus p(11);
  const std::vector<std::uint32_t> r = {1, 3, 3, 10};
  const auto ind = indicator_array(r, p);
  EXPECT_EQ(ind.support_size(), 3u);
  EXPECT_EQ(sum_of_squares(ind), BigInt(3));
  // A = {1, 3, 10} mod 11: r(0) = 3, r(2) = r(9) = 2, r(4) = r(7) = 1.
  EXPECT_EQ(sum_of_squares(cyclic_correlation(ind, ind, p)), BigInt(19));
}

TEST(Correlation, NttLinearConvolution) {
  const std::vector<std::uint64_t> a = {1, 2, 3}, b = {4, 5};
  std::vector<u128> out;
  ASSERT_TRUE(detail::ntt_linear_convolution(a, b, out));
  ASSERT_GE(out.size(), 4u);
  EXPECT_EQ(out[0], 4u);
  EXPECT_EQ(out[1], 13u);
  EXPECT_EQ(out[2], 22u);
  EXPECT_EQ(out[3], 15u);
}
