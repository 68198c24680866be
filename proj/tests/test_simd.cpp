#include <gtest/gtest.h>

#include <cstdlib>

#include "inclab/rng.hpp"
#include "inclab/simd/kernels.hpp"

using namespace inclab;
using namespace inclab::simd;

namespace {

std::vector<std::uint32_t> random_u31(Rng& rng, std::size_t n, std::uint32_t bound) {
  std::vector<std::uint32_t> v(n);
  for (auto& x : v) x = static_cast<std::uint32_t>(rng.below(bound));
  return v;
}

}  // namespace

TEST(Simd, ScalarAlwaysAvailable) {
  const auto isas = available_isas();
  ASSERT_FALSE(isas.empty());
  EXPECT_EQ(isas.front(), Isa::scalar);
  EXPECT_NE(kernels_for(Isa::scalar), nullptr);
  EXPECT_EQ(isa_name(Isa::avx2), "avx2");
}

TEST(Simd, DispatchedTableIsAvailable) {
  const auto isas = available_isas();
  EXPECT_NE(std::find(isas.begin(), isas.end(), kernels().isa), isas.end());
}

TEST(Simd, DotMatchesScalarOnAllLengths) {
  const auto& ref = detail::scalar_table();
  Rng rng(11);
  for (Isa isa : available_isas()) {
    const auto* t = kernels_for(isa);
    ASSERT_NE(t, nullptr);
    for (std::size_t n = 0; n < 70; ++n) {
      const auto u = random_u31(rng, n, 1u << 31), v = random_u31(rng, n, 1u << 31);
      ASSERT_EQ(t->dot_u31(u.data(), v.data(), n), ref.dot_u31(u.data(), v.data(), n)) << isa_name(isa) << n;
    }
  }
}

TEST(Simd, DotExtremeValuesDoNotWrap) {
  const std::size_t n = 1027;
  std::vector<std::uint32_t> u(n, (1u << 31) - 1);
  u128 want = 0;
  for (std::size_t i = 0; i < n; ++i) want += u128{u[i]} * u[i];
  for (Isa isa : available_isas()) EXPECT_EQ(kernels_for(isa)->dot_u31(u.data(), u.data(), n), want) << isa_name(isa);
}

TEST(Simd, SubModMatchesScalarIncludingAliasing) {
  const auto& ref = detail::scalar_table();
  Rng rng(12);
  for (std::uint32_t m : {5u, 13u, 1009u, 2147483647u, 1u << 31}) {
    for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 31u, 100u}) {
      const auto in = random_u31(rng, n, m);
      const auto t = static_cast<std::uint32_t>(rng.below(m));
      std::vector<std::uint32_t> want(n);
      ref.sub_mod(in.data(), n, t, m, want.data());
      for (std::size_t j = 0; j < n; ++j) ASSERT_EQ(want[j], (in[j] + std::uint64_t{m} - t) % m);
      for (Isa isa : available_isas()) {
        std::vector<std::uint32_t> out(n);
        kernels_for(isa)->sub_mod(in.data(), n, t, m, out.data());
        EXPECT_EQ(out, want) << isa_name(isa) << " m=" << m << " n=" << n;
        auto alias = in;
        kernels_for(isa)->sub_mod(alias.data(), n, t, m, alias.data());
        EXPECT_EQ(alias, want) << isa_name(isa) << " aliased";
      }
    }
  }
}

TEST(Simd, UnavailableIsaReturnsNull) {
#if !defined(__aarch64__)
  EXPECT_EQ(kernels_for(Isa::neon), nullptr);
#endif
}
