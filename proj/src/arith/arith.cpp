#include "inclab/arith.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

namespace inclab {

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> f;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      f.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) f.push_back(n);
  return f;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for n < 3.3e24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(std::uint64_t p) {
  if (p < 3 || p > kMax) {
    throw std::invalid_argument("modulus " + std::to_string(p) + " outside [3, 2^31]");
  }
  if (!is_prime(p)) {
    throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  }
  p_ = static_cast<std::uint32_t>(p);
}

std::uint32_t PrimeModulus::pow(std::uint32_t a, std::uint64_t e) const {
  return static_cast<std::uint32_t>(powmod64(a, e, p_));
}

std::uint32_t PrimeModulus::inv(std::uint32_t a) const {
  a %= p_;
  if (a == 0) throw std::domain_error("zero has no multiplicative inverse");
  // Extended Euclid on (a, p).
  std::int64_t r0 = p_, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  return reduce(t0);
}

Residue mod_inverse(Residue a, const PrimeModulus& p) { return Residue{p.inv(a.value)}; }

std::string to_string(const IntLine& line) {
  return std::to_string(line.a) + "," + std::to_string(line.b) + "," + to_string(to_big(line.c));
}

IntLine canonical_line(const IntPoint& p1, const IntPoint& p2) {
  for (const IntPoint& q : {p1, p2}) {
    if (q.x > kMaxGridCoordinate || q.x < -kMaxGridCoordinate || q.y > kMaxGridCoordinate ||
        q.y < -kMaxGridCoordinate) {
      throw std::out_of_range("grid coordinate exceeds 2^40");
    }
  }
  if (p1 == p2) throw std::invalid_argument("canonical_line needs two distinct points");
  std::int64_t dx = p2.x - p1.x;
  std::int64_t dy = p2.y - p1.y;
  std::int64_t a = dy;
  std::int64_t b = -dx;
  std::int64_t g = std::gcd(a, b);
  a /= g;
  b /= g;
  if (a < 0 || (a == 0 && b < 0)) {
    a = -a;
    b = -b;
  }
  IntLine line{a, b, 0};
  line.c = static_cast<i128>(a) * p1.x + static_cast<i128>(b) * p1.y;
  return line;
}

std::size_t IntLineHash::operator()(const IntLine& l) const noexcept {
  auto mix = [](std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  };
  std::uint64_t h = 0;
  h = mix(h, static_cast<std::uint64_t>(l.a));
  h = mix(h, static_cast<std::uint64_t>(l.b));
  h = mix(h, static_cast<std::uint64_t>(static_cast<u128>(l.c)));
  h = mix(h, static_cast<std::uint64_t>(static_cast<u128>(l.c) >> 64));
  return static_cast<std::size_t>(h);
}

std::uint32_t primitive_root(const PrimeModulus& p) {
  const std::uint64_t order = p.value() - 1;
  const auto factors = prime_factors(order);
  for (std::uint32_t g = 2; g < p.value(); ++g) {
    bool ok = true;
    for (std::uint64_t q : factors) {
      if (p.pow(g, order / q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root found");
}

std::uint64_t multiplicative_order(std::uint32_t g, const PrimeModulus& p) {
  g %= p.value();
  if (g == 0) throw std::domain_error("zero has no multiplicative order");
  std::uint64_t order = p.value() - 1;
  for (std::uint64_t q : prime_factors(order)) {
    while (order % q == 0 && p.pow(g, order / q) == 1) order /= q;
  }
  return order;
}

}  // namespace inclab
