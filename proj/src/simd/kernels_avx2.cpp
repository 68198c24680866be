// Compiled with -mavx2 on x86-64; only reached after a runtime CPU check.
#include "inclab/simd/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

namespace inclab::simd::detail {

namespace {

inline u128 horizontal_sum(__m256i acc) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  return u128{lanes[0]} + lanes[1] + lanes[2] + lanes[3];
}

// Products of 31-bit values are < 2^62, so a 64-bit lane holds four of them.
// Each lane of acc_even / acc_odd receives one product per iteration and is
// flushed every four iterations.
u128 dot_u31_avx2(const std::uint32_t* u, const std::uint32_t* v, std::size_t n) {
  u128 total = 0;
  std::size_t j = 0;
  while (j + 8 <= n) {
    __m256i acc_even = _mm256_setzero_si256();
    __m256i acc_odd = _mm256_setzero_si256();
    for (int rep = 0; rep < 4 && j + 8 <= n; ++rep, j += 8) {
      __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(u + j));
      __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + j));
      acc_even = _mm256_add_epi64(acc_even, _mm256_mul_epu32(a, b));
      acc_odd = _mm256_add_epi64(
          acc_odd, _mm256_mul_epu32(_mm256_srli_epi64(a, 32), _mm256_srli_epi64(b, 32)));
    }
    total += horizontal_sum(acc_even);
    total += horizontal_sum(acc_odd);
  }
  for (; j < n; ++j) total += static_cast<std::uint64_t>(u[j]) * v[j];
  return total;
}

// x = in + (m - t) lies in [0, 2m); min(x, x - m) folds it into [0, m)
// because x - m wraps above x whenever x < m.
void sub_mod_avx2(const std::uint32_t* in, std::size_t n, std::uint32_t t, std::uint32_t m,
                  std::uint32_t* out) {
  const __m256i shift = _mm256_set1_epi32(static_cast<int>(m - t));
  const __m256i mod = _mm256_set1_epi32(static_cast<int>(m));
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    __m256i x = _mm256_add_epi32(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(in + j)), shift);
    __m256i y = _mm256_min_epu32(x, _mm256_sub_epi32(x, mod));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + j), y);
  }
  for (; j < n; ++j) out[j] = in[j] >= t ? in[j] - t : in[j] + (m - t);
}

const KernelTable kAvx2{Isa::avx2, &dot_u31_avx2, &sub_mod_avx2};

}  // namespace

const KernelTable* avx2_table() { return &kAvx2; }

}  // namespace inclab::simd::detail

#else

namespace inclab::simd::detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace inclab::simd::detail

#endif
