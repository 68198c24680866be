#pragma once

// Exact integer and rational types shared by every counting module.

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace inclab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using u128 = unsigned __int128;
using i128 = __int128;

BigInt to_big(u128 v);
BigInt to_big(i128 v);

/// x^k as an exact integer.
BigInt big_pow(const BigInt& x, unsigned k);
Rational rational_pow(const Rational& x, unsigned k);

/// Running sum of nonnegative terms. Accumulates in 128 bits and spills
/// into an arbitrary-precision total whenever an addition would overflow.
class ExactSum {
 public:
  void add(u128 term);
  void add(const BigInt& term);
  /// Adds x^k, computing the power in 128 bits when it fits.
  void add_power(std::uint64_t x, unsigned k);
  void add_power_times(std::uint64_t x, unsigned k, std::uint64_t multiplicity);

  BigInt value() const;

 private:
  u128 fast_ = 0;
  BigInt spill_ = 0;
};

/// x^k in 128 bits; returns false on overflow.
bool checked_pow(std::uint64_t x, unsigned k, u128& out);

std::string to_string(const BigInt& v);
std::string to_string(const Rational& v);
/// Parses "n" or "n/d".
Rational parse_rational(const std::string& s);

double to_double(const BigInt& v);
double to_double(const Rational& v);

/// Decimal rendering used in reports (fixed significant digits, locale free).
std::string decimal(double v);

}  // namespace inclab
