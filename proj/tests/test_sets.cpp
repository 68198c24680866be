#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "inclab/sets.hpp"
#include "test_util.hpp"

using namespace inclab;
using test::field_set;
using test::grid_set;

namespace {

std::vector<std::int64_t> elems(const ResidueSet& s) { return {s.elements().begin(), s.elements().end()}; }

}  // namespace

TEST(Sets, ConstructionReducesSortsAndDedups) {
  const auto s = field_set(7, {9, -1, 2, 6, 16});
  EXPECT_EQ(elems(s), (std::vector<std::int64_t>{2, 6}));
  EXPECT_EQ(s.indicator().size(), 7u);
  EXPECT_TRUE(s.contains(9));
  const auto g = grid_set({3, -4, 3});
  EXPECT_EQ(elems(g), (std::vector<std::int64_t>{-4, 3}));
  EXPECT_THROW(g.modulus(), std::logic_error);
  EXPECT_THROW(grid_set({kMaxGridElement + 1}), std::out_of_range);
}

TEST(Sets, ShiftDilateWithoutZero) {
  const auto s = field_set(11, {0, 1, 5});
  EXPECT_EQ(elems(s.shifted(2)), (std::vector<std::int64_t>{3, 9, 10}));
  EXPECT_EQ(elems(s.dilated(3)), (std::vector<std::int64_t>{0, 3, 4}));
  EXPECT_EQ(elems(s.without_zero()), (std::vector<std::int64_t>{1, 5}));
  EXPECT_EQ(elems(grid_set({1, 4}).shifted(5)), (std::vector<std::int64_t>{-4, -1}));
}

TEST(Generators, Examples) {
  GeneratorSpec s;
  s.kind = GeneratorKind::interval;
  s.n = 3;
  EXPECT_EQ(elems(generate(s)), (std::vector<std::int64_t>{1, 2, 3}));
  s.kind = GeneratorKind::interval_inverse;
  s.modulus = PrimeModulus(7);
  EXPECT_EQ(elems(generate(s)), (std::vector<std::int64_t>{1, 4, 5}));
  s.shift = 1;
  EXPECT_EQ(elems(generate(s)), (std::vector<std::int64_t>{2, 5, 6}));
  s.kind = GeneratorKind::geometric;
  s.modulus = PrimeModulus(13);
  s.ratio = 3;
  EXPECT_EQ(elems(generate(s)), (std::vector<std::int64_t>{1, 3, 9}));
}

TEST(Generators, RandomIsDeterministicAndSized) {
  GeneratorSpec s;
  s.modulus = PrimeModulus(101);
  s.n = 40;
  s.seed = 77;
  const auto a = generate(s);
  EXPECT_EQ(a, generate(s));
  EXPECT_EQ(a.size(), 40u);
  s.seed = 78;
  EXPECT_NE(a, generate(s));
  s.n = 101;
  EXPECT_EQ(generate(s).size(), 101u);
}

TEST(Generators, Errors) {
  GeneratorSpec s;
  s.modulus = PrimeModulus(7);
  s.n = 8;
  s.seed = 1;
  EXPECT_THROW(generate(s), std::invalid_argument);  // n > p
  s.n = 3;
  s.seed.reset();
  EXPECT_THROW(generate(s), std::invalid_argument);  // no seed
  s.kind = GeneratorKind::geometric;
  s.ratio = 6;  // order 2 mod 7
  EXPECT_THROW(generate(s), std::invalid_argument);
  s.ratio = 0;
  EXPECT_THROW(generate(s), std::invalid_argument);
  s.kind = GeneratorKind::interval_inverse;
  s.modulus.reset();
  EXPECT_THROW(generate(s), std::invalid_argument);
  EXPECT_THROW(parse_generator_kind("spiral"), std::invalid_argument);
  EXPECT_EQ(parse_generator_kind(to_string(GeneratorKind::interval_inverse)), GeneratorKind::interval_inverse);
}

TEST(Sumsets, Examples) {
  EXPECT_EQ(elems(sumset(grid_set({0, 1}), grid_set({0, 1}), SetOp::add)), (std::vector<std::int64_t>{0, 1, 2}));
  EXPECT_EQ(elems(sumset(field_set(7, {1, 2}), field_set(7, {1, 2}), SetOp::mul)),
            (std::vector<std::int64_t>{1, 2, 4}));
  EXPECT_EQ(elems(sumset(field_set(7, {0, 3}), field_set(7, {5}), SetOp::mul)), (std::vector<std::int64_t>{0, 1}));
  EXPECT_THROW(sumset(field_set(7, {1}), field_set(11, {1}), SetOp::add), std::invalid_argument);
  EXPECT_THROW(sumset(field_set(7, {1}), grid_set({1}), SetOp::add), std::invalid_argument);
}

TEST(Sumsets, DoublingRatio) {
  GeneratorSpec s;
  s.kind = GeneratorKind::interval;
  s.n = 10;
  EXPECT_EQ(doubling_ratio(generate(s)), Rational(19, 10));
  EXPECT_EQ(doubling_ratio(grid_set({5})), Rational(1));
  EXPECT_EQ(doubling_ratio(grid_set({1, 2, 4, 8})), Rational(10, 4));
  EXPECT_THROW(doubling_ratio(grid_set({})), std::invalid_argument);
}

TEST(Sumsets, BasicInequalitiesOnRandomSets) {
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    const PrimeModulus p(test::small_primes(5, 61)[rng.below(16)]);
    const auto a = test::random_field_set(rng, p, 10), b = test::random_field_set(rng, p, 10);
    const auto ab = sumset(a, b, SetOp::add);
    EXPECT_LE(ab.size(), a.size() * b.size());
    EXPECT_GE(ab.size(), std::max(a.size(), b.size()));
    const auto d = sumset(a, a, SetOp::sub);
    EXPECT_GE(d.size(), a.size());
    EXPECT_TRUE(d.contains(0));
  }
}

TEST(Sumsets, PlunneckeRuzsaSpotCheck) {
  Rng rng(32);
  std::vector<ResidueSet> sets;
  for (int t = 0; t < 40; ++t) {
    sets.push_back(test::random_field_set(rng, PrimeModulus(101), 8));
    sets.push_back(test::random_grid_set(rng, 60, 8));
  }
  for (std::size_t n : {3u, 6u, 9u}) {
    GeneratorSpec s;
    s.modulus = PrimeModulus(1009);
    s.n = n;
    for (auto k : {GeneratorKind::interval, GeneratorKind::interval_inverse, GeneratorKind::geometric}) {
      s.kind = k;
      sets.push_back(generate(s));
    }
  }
  for (const auto& a : sets) {
    const Rational k = doubling_ratio(a);
    for (unsigned n = 1; n <= 2; ++n) {
      for (unsigned m = 1; m <= 2; ++m) {
        const Rational bound = rational_pow(k, n + m) * Rational(a.size());
        EXPECT_LE(Rational(iterated_sumset(a, n, m).size()), bound);
      }
    }
  }
}

TEST(Sumsets, IteratedSumset) {
  EXPECT_EQ(elems(iterated_sumset(grid_set({0, 1}), 2, 1)), (std::vector<std::int64_t>{-1, 0, 1, 2}));
  EXPECT_THROW(iterated_sumset(grid_set({0}), 0, 1), std::invalid_argument);
}

TEST(SetFiles, RoundTrip) {
  const auto f = field_set(101, {0, 5, 100});
  const auto g = grid_set({-7, 0, 2147483647});
  for (const auto& s : {f, g}) {
    std::stringstream ss;
    write_set(ss, s);
    EXPECT_EQ(read_set(ss), s);
  }
  const auto path = (std::filesystem::temp_directory_path() / "inclab_test_set.set").string();
  write_set_file(path, f);
  EXPECT_EQ(read_set_file(path), f);
  std::filesystem::remove(path);
}

TEST(SetFiles, RejectsMalformedInput) {
  for (const char* text : {"", "p 15\n1\n", "q 7\n", "grid\nx\n", "p 7\n1.5\n"}) {
    std::stringstream ss(text);
    EXPECT_THROW(read_set(ss), std::invalid_argument) << text;
  }
  EXPECT_THROW(read_set_file("/nonexistent/dir/none.set"), std::invalid_argument);
}
