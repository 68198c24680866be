#pragma once

// Exact cyclic correlation and convolution of count arrays over Z/pZ.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "inclab/arith.hpp"
#include "inclab/exact.hpp"

namespace inclab {

/// Length-p array of exact nonnegative counts indexed by residue.
struct CountArray {
  std::vector<std::uint64_t> values;

  CountArray() = default;
  explicit CountArray(std::size_t n) : values(n, 0) {}
  explicit CountArray(std::vector<std::uint64_t> v) : values(std::move(v)) {}

  std::size_t size() const { return values.size(); }
  std::uint64_t& operator[](std::size_t i) { return values[i]; }
  std::uint64_t operator[](std::size_t i) const { return values[i]; }
  std::span<const std::uint64_t> view() const { return values; }

  BigInt total() const;
  std::uint64_t max() const;
  std::size_t support_size() const;

  friend bool operator==(const CountArray&, const CountArray&) = default;
};

/// Indicator array of a list of residues modulo p.
CountArray indicator_array(std::span<const std::uint32_t> residues, const PrimeModulus& p);

enum class CorrelationStrategy {
  automatic,
  naive_scalar,  // O(p^2) reference with 128-bit accumulators
  naive_simd,    // O(p^2) dot products through the dispatched kernels
  sparse,        // O(nnz(u) * nnz(v)) over supports
  ntt,           // three-prime NTT with CRT reconstruction
};

/// d(x) = sum_a u(a) v(a - x) mod p. Every strategy returns the same array.
/// std::invalid_argument on length mismatch; std::overflow_error when an
/// output entry does not fit 64 bits.
CountArray cyclic_correlation(const CountArray& u, const CountArray& v, const PrimeModulus& p,
                              CorrelationStrategy strategy = CorrelationStrategy::automatic);

/// c(x) = sum_y u(y) v(x - y) mod p.
CountArray cyclic_convolution(const CountArray& u, const CountArray& v, const PrimeModulus& p,
                              CorrelationStrategy strategy = CorrelationStrategy::automatic);

/// sum_x a(x)^2 exactly.
BigInt sum_of_squares(const CountArray& a);

namespace detail {
/// Linear convolution of nonnegative sequences via three NTT primes.
/// Returns false when the output could exceed the CRT range.
bool ntt_linear_convolution(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                            std::vector<u128>& out);
}  // namespace detail

}  // namespace inclab
