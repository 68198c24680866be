#include "inclab/exact.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace inclab {

BigInt to_big(u128 v) {
  BigInt hi = static_cast<std::uint64_t>(v >> 64);
  BigInt lo = static_cast<std::uint64_t>(v);
  return (hi << 64) | lo;
}

BigInt to_big(i128 v) {
  if (v >= 0) return to_big(static_cast<u128>(v));
  // -v overflows only for the minimum value; go through unsigned negation.
  return -to_big(static_cast<u128>(0) - static_cast<u128>(v));
}

BigInt big_pow(const BigInt& x, unsigned k) {
  return boost::multiprecision::pow(x, k);
}

Rational rational_pow(const Rational& x, unsigned k) {
  BigInt n = big_pow(boost::multiprecision::numerator(x), k);
  BigInt d = big_pow(boost::multiprecision::denominator(x), k);
  return Rational(n, d);
}

bool checked_pow(std::uint64_t x, unsigned k, u128& out) {
  u128 acc = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(acc, static_cast<u128>(x), &acc)) return false;
  }
  out = acc;
  return true;
}

void ExactSum::add(u128 term) {
  if (__builtin_add_overflow(fast_, term, &fast_)) {
    // fast_ wrapped; the lost carry is exactly 2^128.
    spill_ += BigInt(1) << 128;
  }
}

void ExactSum::add(const BigInt& term) { spill_ += term; }

void ExactSum::add_power(std::uint64_t x, unsigned k) {
  u128 p;
  if (checked_pow(x, k, p)) {
    add(p);
  } else {
    spill_ += big_pow(BigInt(x), k);
  }
}

void ExactSum::add_power_times(std::uint64_t x, unsigned k, std::uint64_t multiplicity) {
  if (multiplicity == 0) return;
  u128 p;
  u128 term;
  if (checked_pow(x, k, p) && !__builtin_mul_overflow(p, static_cast<u128>(multiplicity), &term)) {
    add(term);
  } else {
    spill_ += big_pow(BigInt(x), k) * multiplicity;
  }
}

BigInt ExactSum::value() const { return spill_ + to_big(fast_); }

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& v) {
  const BigInt& n = boost::multiprecision::numerator(v);
  const BigInt& d = boost::multiprecision::denominator(v);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

Rational parse_rational(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt n(s.substr(0, slash));
    BigInt d(s.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator");
    return Rational(n, d);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not an exact rational: '" + s + "'");
  }
}

double to_double(const BigInt& v) { return v.convert_to<double>(); }

double to_double(const Rational& v) {
  // Shift both parts into double range before dividing.
  BigInt n = boost::multiprecision::numerator(v);
  BigInt d = boost::multiprecision::denominator(v);
  long shift = 0;
  auto bits = [](const BigInt& x) -> long {
    return x == 0 ? 0 : static_cast<long>(boost::multiprecision::msb(boost::multiprecision::abs(x)));
  };
  long excess_n = bits(n) - 900;
  long excess_d = bits(d) - 900;
  if (excess_n > 0) { n >>= excess_n; shift += excess_n; }
  if (excess_d > 0) { d >>= excess_d; shift -= excess_d; }
  return std::ldexp(n.convert_to<double>() / d.convert_to<double>(), static_cast<int>(shift));
}

std::string decimal(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace inclab
