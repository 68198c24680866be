#include <gtest/gtest.h>

#include "inclab/counts.hpp"
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

BigInt bridge_rhs(const RichnessSpectrum& s, unsigned k) {
  BigInt v = s.size_a * s.size_b;
  for (const auto& [i, c] : s.all_classes()) {
    if (i >= 2) v += (big_pow(BigInt(i), k) - i) * c;
  }
  return v;
}

}  // namespace

TEST(Moments, PinnedThreeByThree) {
  const auto a = field_set(13, {0, 1, 2});
  EXPECT_EQ(spectrum_moment(a, a, 3, MomentFilter::all_i_ge_2).count, BigInt(312));
  EXPECT_EQ(spectrum_moment(a, a, 3, MomentFilter::slope_only_i_ge_2).count, BigInt(5 * 27 + 12 * 8));
  EXPECT_EQ(spectrum_moment(a, a, 3, MomentFilter::tilde).count, BigInt(2 * 27 + 12 * 8));
  EXPECT_EQ(collinear_tuples_oracle(a, a, 4), BigInt(801));
  EXPECT_EQ(collinear_tuples_oracle(grid_set({0, 1, 2}), grid_set({0, 1, 2}), 4), BigInt(801));
  EXPECT_EQ(oracle::enumerate_collinear_tuples(a, a, 4), BigInt(801));
  EXPECT_EQ(collinear_tuples_oracle(a, a, 3), BigInt(273));
}

TEST(Moments, FullFieldAndSparseSets) {
  const auto f = full_field(7);
  for (unsigned k : {2u, 3u}) EXPECT_EQ(spectrum_moment(f, f, k, MomentFilter::all_i_ge_2).count, BigInt(56) * big_pow(BigInt(7), k));
  // A Sidon-like pair of singletons: one point, no line with two points.
  EXPECT_EQ(spectrum_moment(field_set(7, {1}), field_set(7, {2}), 3, MomentFilter::tilde).count, BigInt(0));
  EXPECT_THROW(spectrum_moment(f, f, 1, MomentFilter::all_i_ge_2), std::invalid_argument);
  EXPECT_THROW(spectrum_moment(grid_set({1, 2}), grid_set({1, 2}), 2, MomentFilter::slope_nonzero_all_i),
               std::invalid_argument);
  EXPECT_EQ(parse_moment_filter(to_string(MomentFilter::tilde)), MomentFilter::tilde);
  EXPECT_THROW(parse_moment_filter("everything"), std::invalid_argument);
}

TEST(Moments, AxisLinesForceTheLowerBound) {
  Rng rng(71);
  for (int t = 0; t < 40; ++t) {
    const PrimeModulus p(test::small_primes(11, 101)[rng.below(21)]);
    const auto a = test::random_field_set(rng, p, 12, 2);
    for (unsigned k : {2u, 3u, 4u})
      EXPECT_GE(spectrum_moment(a, a, k, MomentFilter::all_i_ge_2).count, 2 * big_pow(BigInt(a.size()), k + 1));
  }
}

TEST(Collinear, SinglePointAndErrors) {
  EXPECT_EQ(collinear_tuples_oracle(field_set(7, {3}), field_set(7, {3}), 3), BigInt(1));
  std::vector<std::int64_t> many(30);
  for (int i = 0; i < 30; ++i) many[i] = i;
  EXPECT_THROW(collinear_tuples_oracle(field_set(31, many), field_set(31, many), 3), std::invalid_argument);
  EXPECT_THROW(collinear_tuples_oracle(field_set(7, {3}), field_set(7, {3}), 1), std::invalid_argument);
}

TEST(Collinear, BridgeIdentityAndEnumeration) {
  Rng rng(72);
  const auto primes = test::small_primes(5, 31);
  for (int t = 0; t < 60; ++t) {
    const PrimeModulus p(primes[rng.below(primes.size())]);
    const auto a = test::random_field_set(rng, p, 5), b = test::random_field_set(rng, p, 5);
    const auto s = grid_spectrum(a, b);
    for (unsigned k : {2u, 3u, 4u}) ASSERT_EQ(collinear_tuples_oracle(a, b, k), bridge_rhs(s, k));
    ASSERT_EQ(oracle::enumerate_collinear_tuples(a, b, 3), bridge_rhs(s, 3));
    const auto ga = test::random_grid_set(rng, 10, 5), gb = test::random_grid_set(rng, 10, 5);
    ASSERT_EQ(collinear_tuples_oracle(ga, gb, 3), bridge_rhs(grid_spectrum(ga, gb), 3));
    ASSERT_EQ(oracle::enumerate_collinear_tuples(ga, gb, 3), bridge_rhs(grid_spectrum(ga, gb), 3));
  }
}

TEST(TildeEnergy, Examples) {
  EXPECT_EQ(tilde_mult_energy(field_set(13, {1, 2}), field_set(13, {1, 2}), 2), BigInt(6));
  EXPECT_EQ(tilde_mult_energy(field_set(13, {0, 5}), field_set(13, {1, 2, 3}), 4), BigInt(3));
  Rng rng(73);
  for (int t = 0; t < 30; ++t) {
    const auto a = test::random_field_set(rng, PrimeModulus(53), 10);
    const auto nz = a.without_zero();
    if (nz.empty()) continue;
    for (unsigned k : {2u, 3u}) EXPECT_GE(tilde_mult_energy(a, a, k), big_pow(BigInt(nz.size()), k));
  }
  EXPECT_THROW(tilde_mult_energy(field_set(13, {0}), field_set(13, {1}), 2), std::invalid_argument);
}

// sum_{lambda != 0} E_k(B, lambda A) = slope_nonzero_all_i moment = sum_mu E~_k(B - mu, A) for 0 not in A.
TEST(TCk, ThreeWayIdentity) {
  Rng rng(74);
  const auto primes = test::small_primes(5, 13);
  for (int t = 0; t < 60; ++t) {
    const PrimeModulus p(primes[rng.below(primes.size())]);
    const auto a = test::random_field_set(rng, p, 6).without_zero();
    const auto b = test::random_field_set(rng, p, 6);
    if (a.empty()) continue;
    for (unsigned k : {2u, 3u, 4u}) {
      BigInt lhs = 0, rhs = 0;
      for (std::uint32_t lam = 1; lam < p.value(); ++lam) lhs += additive_energy_k(b, a.dilated(lam), k);
      for (std::uint32_t mu = 0; mu < p.value(); ++mu) {
        const auto bm = b.shifted(mu);
        if (!bm.without_zero().empty()) rhs += tilde_mult_energy(bm, a, k);
      }
      const auto mid = spectrum_moment(a, b, k, MomentFilter::slope_nonzero_all_i).count;
      ASSERT_EQ(lhs, mid);
      ASSERT_EQ(mid, rhs);
    }
  }
}

TEST(BalancedMoment, ExamplesAndOracle) {
  for (unsigned n : {2u, 3u, 5u}) EXPECT_EQ(balanced_moment(full_field(7), n), Rational(0));
  EXPECT_THROW(balanced_moment(field_set(7, {1}), 1), std::invalid_argument);
  Rng rng(75);
  for (int t = 0; t < 40; ++t) {
    const PrimeModulus p(test::small_primes(5, 13)[rng.below(4)]);
    const auto a = test::random_field_set(rng, p, 7);
    for (unsigned n : {3u, 4u}) ASSERT_EQ(balanced_moment(a, n), oracle::balanced_moment(a, n));
  }
}

TEST(BalancedMoment, LineValueIdentity) {
  Rng rng(76);
  for (int t = 0; t < 20; ++t) {
    const PrimeModulus p(test::small_primes(5, 23)[rng.below(7)]);
    const auto a = test::random_field_set(rng, p, 8);
    const Rational mean(BigInt(a.size() * a.size()), BigInt(p.value()));
    for_each_slope_line(a, a, 1, p.value(), [&](std::uint32_t l, std::uint32_t m, std::uint32_t i) {
      ASSERT_EQ(oracle::balanced_line_value(a, l, m), Rational(i) - mean);
    });
  }
}

TEST(BalancedMoment, FourthMomentIsModerate) {
  Rng rng(77);
  for (int t = 0; t < 5; ++t) {
    const auto a = test::random_field_set(rng, PrimeModulus(101), 30, 30);
    const double n = static_cast<double>(a.size());
    EXPECT_LE(to_double(balanced_moment(a, 4)), 100 * std::pow(n, 5) * std::log(n));
  }
}

TEST(Incidences, Examples) {
  Rng rng(78);
  const PrimeModulus p(11);
  const auto a = test::random_field_set(rng, p, 5), b = test::random_field_set(rng, p, 5);
  std::vector<LineId> all;
  for (std::uint32_t l = 0; l < 11; ++l)
    for (std::uint32_t m = 0; m < 11; ++m) all.push_back(SlopeLine{l, m});
  EXPECT_EQ(incidence_count(a, b, all), BigInt(11 * a.size() * b.size()));
  EXPECT_EQ(incidence_count(a, b, std::vector<LineId>{}), BigInt(0));

  const auto g = field_set(13, {0, 1, 2});
  std::vector<LineId> rich;
  for (const auto& m : rich_lines(g, g, 3, RichMode::raw).members) rich.push_back(m.line);
  EXPECT_EQ(incidence_count(g, g, rich), BigInt(24));
  EXPECT_THROW(incidence_count(g, g, std::vector<LineId>{IntLine{1, 0, 0}}), std::invalid_argument);
  EXPECT_THROW(incidence_count(grid_set({1}), grid_set({1}), std::vector<LineId>{SlopeLine{1, 0}}),
               std::invalid_argument);
}

TEST(Incidences, GridLines) {
  const auto g = grid_set({0, 1, 2});
  std::vector<LineId> lines = {canonical_line({0, 0}, {1, 1}), canonical_line({0, 2}, {2, 0}),
                               canonical_line({0, 0}, {0, 1})};
  EXPECT_EQ(incidence_count(g, g, lines), BigInt(9));
}

TEST(Translation, ExamplesAndOracle) {
  const auto f = full_field(7);
  const auto all = translation_quadruples(f, f, f, f);
  EXPECT_EQ(all.count, BigInt(343));
  EXPECT_EQ(all.error, Rational(0));
  const auto empty = ResidueSet::in_field(PrimeModulus(7), std::vector<std::int64_t>{});
  EXPECT_EQ(translation_quadruples(f, f, empty, f).count, BigInt(0));
  EXPECT_THROW(translation_quadruples(f, f, field_set(7, {0, 1}), f, true), std::invalid_argument);
  Rng rng(79);
  for (int t = 0; t < 40; ++t) {
    const PrimeModulus p(11);
    const auto a = test::random_field_set(rng, p, 8), b = test::random_field_set(rng, p, 8);
    const auto x = test::random_field_set(rng, p, 8), y = test::random_field_set(rng, p, 8);
    const auto q = translation_quadruples(a, b, x, y, false, 1 + t % 3);
    ASSERT_EQ(q.count, oracle::translation_quadruples(a, b, x, y));
    const Rational main(BigInt(a.size() * b.size() * x.size() * y.size()), BigInt(11));
    ASSERT_EQ(q.error, Rational(q.count) - main);
  }
}
