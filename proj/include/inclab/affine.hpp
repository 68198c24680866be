#pragma once

// The affine group Aff(F_p): x -> a x + b with a != 0, stored as the point
// (a, b) of F_p^* x F_p.

#include <compare>
#include <cstdint>

#include "inclab/arith.hpp"

namespace inclab {

struct AffineElement {
  std::uint32_t a = 1;
  std::uint32_t b = 0;
  friend auto operator<=>(const AffineElement&, const AffineElement&) = default;
};

inline AffineElement affine_identity() { return {1, 0}; }

/// (a1, b1) o (a2, b2) = (a1 a2, a1 b2 + b1).
inline AffineElement compose(const AffineElement& f, const AffineElement& g, const PrimeModulus& p) {
  return {p.mul(f.a, g.a), p.add(p.mul(f.a, g.b), f.b)};
}

/// (a, b)^{-1} = (a^{-1}, -a^{-1} b). std::domain_error when a = 0.
inline AffineElement inverse(const AffineElement& f, const PrimeModulus& p) {
  const auto ai = p.inv(f.a);
  return {ai, p.neg(p.mul(ai, f.b))};
}

inline std::uint32_t apply(const AffineElement& f, std::uint32_t x, const PrimeModulus& p) {
  return p.add(p.mul(f.a, x), f.b);
}

}  // namespace inclab
