// Exact linear convolution through three NTT-friendly primes and Garner
// reconstruction. The result is exact whenever every output entry is below
// the product of the primes (about 2^86).

#include <algorithm>
#include <array>
#include <cstdint>

#include "inclab/correlation.hpp"

namespace inclab::detail {

namespace {

struct NttPrime {
  std::uint32_t mod;
  std::uint32_t root;
};

constexpr std::array<NttPrime, 3> kPrimes{{{998244353u, 3u}, {167772161u, 3u}, {469762049u, 3u}}};
constexpr std::size_t kMaxLength = std::size_t{1} << 23;
constexpr u128 kCrtSafeBound = u128{1} << 85;

std::uint32_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint32_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = r * a % m;
    a = a * a % m;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

void ntt(std::vector<std::uint32_t>& a, bool inverse, const NttPrime& prime) {
  const std::uint32_t m = prime.mod;
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint32_t w = pow_mod(prime.root, (m - 1) / len, m);
    if (inverse) w = pow_mod(w, m - 2, m);
    const std::size_t half = len / 2;
    std::vector<std::uint32_t> tw(half);
    tw[0] = 1;
    for (std::size_t k = 1; k < half; ++k) tw[k] = static_cast<std::uint32_t>(std::uint64_t{tw[k - 1]} * w % m);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        std::uint32_t x = a[i + k];
        std::uint32_t y = static_cast<std::uint32_t>(std::uint64_t{a[i + k + half]} * tw[k] % m);
        a[i + k] = x + y >= m ? x + y - m : x + y;
        a[i + k + half] = x >= y ? x - y : x + m - y;
      }
    }
  }
  if (inverse) {
    std::uint32_t n_inv = pow_mod(n, m - 2, m);
    for (auto& x : a) x = static_cast<std::uint32_t>(std::uint64_t{x} * n_inv % m);
  }
}

std::vector<std::uint32_t> convolve_mod(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                        std::size_t len, const NttPrime& prime) {
  std::vector<std::uint32_t> fa(len, 0), fb(len, 0);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = static_cast<std::uint32_t>(a[i] % prime.mod);
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = static_cast<std::uint32_t>(b[i] % prime.mod);
  ntt(fa, false, prime);
  ntt(fb, false, prime);
  for (std::size_t i = 0; i < len; ++i) fa[i] = static_cast<std::uint32_t>(std::uint64_t{fa[i]} * fb[i] % prime.mod);
  ntt(fa, true, prime);
  return fa;
}

bool mul_sat(u128 x, u128 y, u128& out) { return !__builtin_mul_overflow(x, y, &out); }

}  // namespace

bool ntt_linear_convolution(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                            std::vector<u128>& out) {
  out.clear();
  if (a.empty() || b.empty()) return true;
  const std::size_t need = a.size() + b.size() - 1;
  std::size_t len = 1;
  while (len < need) len <<= 1;
  if (len > kMaxLength) return false;

  u128 sum_a = 0, sum_b = 0;
  for (auto x : a) sum_a += x;
  for (auto x : b) sum_b += x;
  const u128 max_a = *std::max_element(a.begin(), a.end());
  const u128 max_b = *std::max_element(b.begin(), b.end());
  u128 bound1, bound2;
  bool ok1 = mul_sat(sum_a, max_b, bound1);
  bool ok2 = mul_sat(sum_b, max_a, bound2);
  if (!(ok1 && bound1 < kCrtSafeBound) && !(ok2 && bound2 < kCrtSafeBound)) return false;

  auto r1 = convolve_mod(a, b, len, kPrimes[0]);
  auto r2 = convolve_mod(a, b, len, kPrimes[1]);
  auto r3 = convolve_mod(a, b, len, kPrimes[2]);

  const std::uint64_t m1 = kPrimes[0].mod, m2 = kPrimes[1].mod, m3 = kPrimes[2].mod;
  const std::uint64_t inv_m1_mod_m2 = pow_mod(m1, m2 - 2, m2);
  const std::uint64_t m1m2_mod_m3 = (m1 % m3) * (m2 % m3) % m3;
  const std::uint64_t inv_m1m2_mod_m3 = pow_mod(m1m2_mod_m3, m3 - 2, m3);

  out.resize(need);
  for (std::size_t i = 0; i < need; ++i) {
    std::uint64_t x1 = r1[i];
    std::uint64_t x2 = (r2[i] + m2 - x1 % m2) % m2 * inv_m1_mod_m2 % m2;
    std::uint64_t partial_mod_m3 = (x1 % m3 + (x2 % m3) * (m1 % m3)) % m3;
    std::uint64_t x3 = (r3[i] + m3 - partial_mod_m3) % m3 * inv_m1m2_mod_m3 % m3;
    out[i] = u128{x1} + u128{x2} * m1 + u128{x3} * m1 * m2;
  }
  return true;
}

}  // namespace inclab::detail
