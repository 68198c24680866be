#include <cstdlib>
#include <string>

#include "inclab/simd/kernels.hpp"

namespace inclab::simd {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

namespace {

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
      return detail::avx2_table() != nullptr && __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
      // NEON is architectural on AArch64.
      return detail::neon_table() != nullptr;
  }
  return false;
}

const KernelTable& select() {
  if (const char* forced = std::getenv("INCLAB_ISA")) {
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (isa_name(isa) == forced) {
        if (const KernelTable* t = kernels_for(isa)) return *t;
      }
    }
  }
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (const KernelTable* t = kernels_for(isa)) return *t;
  }
  return detail::scalar_table();
}

}  // namespace

const KernelTable* kernels_for(Isa isa) {
  if (!cpu_supports(isa)) return nullptr;
  switch (isa) {
    case Isa::scalar: return &detail::scalar_table();
    case Isa::avx2: return detail::avx2_table();
    case Isa::neon: return detail::neon_table();
  }
  return nullptr;
}

const KernelTable& kernels() {
  static const KernelTable& table = select();
  return table;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    if (kernels_for(isa)) out.push_back(isa);
  }
  return out;
}

}  // namespace inclab::simd
