#include "inclab/simd/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>

namespace inclab::simd::detail {

namespace {

// Same flush discipline as the AVX2 variant: at most four 62-bit products
// per 64-bit lane before folding into the 128-bit total.
u128 dot_u31_neon(const std::uint32_t* u, const std::uint32_t* v, std::size_t n) {
  u128 total = 0;
  std::size_t j = 0;
  while (j + 4 <= n) {
    uint64x2_t acc_lo = vdupq_n_u64(0);
    uint64x2_t acc_hi = vdupq_n_u64(0);
    for (int rep = 0; rep < 4 && j + 4 <= n; ++rep, j += 4) {
      uint32x4_t a = vld1q_u32(u + j);
      uint32x4_t b = vld1q_u32(v + j);
      acc_lo = vmlal_u32(acc_lo, vget_low_u32(a), vget_low_u32(b));
      acc_hi = vmlal_high_u32(acc_hi, a, b);
    }
    total += u128{vgetq_lane_u64(acc_lo, 0)} + vgetq_lane_u64(acc_lo, 1);
    total += u128{vgetq_lane_u64(acc_hi, 0)} + vgetq_lane_u64(acc_hi, 1);
  }
  for (; j < n; ++j) total += static_cast<std::uint64_t>(u[j]) * v[j];
  return total;
}

void sub_mod_neon(const std::uint32_t* in, std::size_t n, std::uint32_t t, std::uint32_t m,
                  std::uint32_t* out) {
  const uint32x4_t shift = vdupq_n_u32(m - t);
  const uint32x4_t mod = vdupq_n_u32(m);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    uint32x4_t x = vaddq_u32(vld1q_u32(in + j), shift);
    vst1q_u32(out + j, vminq_u32(x, vsubq_u32(x, mod)));
  }
  for (; j < n; ++j) out[j] = in[j] >= t ? in[j] - t : in[j] + (m - t);
}

const KernelTable kNeon{Isa::neon, &dot_u31_neon, &sub_mod_neon};

}  // namespace

const KernelTable* neon_table() { return &kNeon; }

}  // namespace inclab::simd::detail

#else

namespace inclab::simd::detail {
const KernelTable* neon_table() { return nullptr; }
}  // namespace inclab::simd::detail

#endif
