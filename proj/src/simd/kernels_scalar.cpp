#include "inclab/simd/kernels.hpp"

namespace inclab::simd::detail {

namespace {

u128 dot_u31_scalar(const std::uint32_t* u, const std::uint32_t* v, std::size_t n) {
  u128 acc = 0;
  for (std::size_t j = 0; j < n; ++j) acc += static_cast<std::uint64_t>(u[j]) * v[j];
  return acc;
}

void sub_mod_scalar(const std::uint32_t* in, std::size_t n, std::uint32_t t, std::uint32_t m,
                    std::uint32_t* out) {
  for (std::size_t j = 0; j < n; ++j) out[j] = in[j] >= t ? in[j] - t : in[j] + (m - t);
}

const KernelTable kScalar{Isa::scalar, &dot_u31_scalar, &sub_mod_scalar};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace inclab::simd::detail
