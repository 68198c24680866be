#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference and
// optional AVX2 / NEON variants; all variants must agree bit for bit.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "inclab/exact.hpp"

namespace inclab::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;

  /// sum_j u[j] * v[j]. Entries must be < 2^31.
  u128 (*dot_u31)(const std::uint32_t* u, const std::uint32_t* v, std::size_t n);

  /// out[j] = (in[j] - t) mod m. Requires in[j] < m, t < m, m <= 2^31.
  /// `out` may alias `in`.
  void (*sub_mod)(const std::uint32_t* in, std::size_t n, std::uint32_t t, std::uint32_t m,
                  std::uint32_t* out);
};

/// Best table supported by the running CPU. The INCLAB_ISA environment
/// variable (scalar|avx2|neon) forces a specific variant when supported.
const KernelTable& kernels();

/// Table for a specific ISA, or nullptr when the CPU or build lacks it.
const KernelTable* kernels_for(Isa isa);

std::vector<Isa> available_isas();

namespace detail {
const KernelTable& scalar_table();
const KernelTable* avx2_table();  // nullptr when not compiled in
const KernelTable* neon_table();
}  // namespace detail

}  // namespace inclab::simd
