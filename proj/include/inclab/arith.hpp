#pragma once

// Prime-field residues and canonical integer lines.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "inclab/exact.hpp"

namespace inclab {

/// Deterministic primality test valid for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// The prime p of F_p. Construction verifies primality and 3 <= p <= 2^31.
class PrimeModulus {
 public:
  static constexpr std::uint64_t kMax = std::uint64_t{1} << 31;

  explicit PrimeModulus(std::uint64_t p);

  std::uint32_t value() const { return p_; }

  std::uint32_t reduce(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + p_ - b);
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  /// Throws std::domain_error for a = 0.
  std::uint32_t inv(std::uint32_t a) const;

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  std::uint32_t p_;
};

/// An element of F_p, always reduced.
struct Residue {
  std::uint32_t value = 0;
  friend auto operator<=>(const Residue&, const Residue&) = default;
};

/// Multiplicative inverse; std::domain_error when a = 0.
Residue mod_inverse(Residue a, const PrimeModulus& p);

struct IntPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend auto operator<=>(const IntPoint&, const IntPoint&) = default;
};

/// Line a*x + b*y = c with gcd(a,b) = 1 and (a > 0) or (a = 0 and b > 0).
struct IntLine {
  std::int64_t a = 0;
  std::int64_t b = 0;
  i128 c = 0;

  bool contains(const IntPoint& q) const {
    return static_cast<i128>(a) * q.x + static_cast<i128>(b) * q.y == c;
  }
  bool is_vertical() const { return b == 0; }
  bool is_horizontal() const { return a == 0; }
  friend bool operator==(const IntLine&, const IntLine&) = default;
};

std::string to_string(const IntLine& line);

/// Coordinates must satisfy |x|,|y| <= kMaxGridCoordinate.
inline constexpr std::int64_t kMaxGridCoordinate = std::int64_t{1} << 40;

/// Canonical line through two distinct integer points.
/// std::invalid_argument for equal points, std::out_of_range for coordinates
/// beyond kMaxGridCoordinate.
IntLine canonical_line(const IntPoint& p1, const IntPoint& p2);

struct IntLineHash {
  std::size_t operator()(const IntLine& l) const noexcept;
};

/// Smallest primitive root modulo p.
std::uint32_t primitive_root(const PrimeModulus& p);

/// Multiplicative order of a nonzero residue.
std::uint64_t multiplicative_order(std::uint32_t g, const PrimeModulus& p);

}  // namespace inclab
