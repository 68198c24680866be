#include "inclab/oracle.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

namespace inclab::oracle {

namespace {

std::vector<IntPoint> product(const ResidueSet& a, const ResidueSet& b) {
  std::vector<IntPoint> pts;
  for (auto x : a.elements()) {
    for (auto y : b.elements()) pts.push_back({x, y});
  }
  return pts;
}

// Scaled balanced values F(x) = p A(x) - |A|, so f_A = F / p.
std::vector<std::int64_t> scaled_balanced(const ResidueSet& a) {
  const auto& p = a.modulus();
  std::vector<std::int64_t> f(p.value(), -static_cast<std::int64_t>(a.size()));
  for (auto r : a.residues()) f[r] += p.value();
  return f;
}

std::uint32_t md(std::int64_t x, std::uint32_t p) {
  std::int64_t r = x % p;
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

std::uint32_t inverse_by_search(std::uint32_t x, std::uint32_t p) {
  for (std::uint32_t y = 1; y < p; ++y) {
    if (std::uint64_t{x} * y % p == 1) return y;
  }
  throw std::domain_error("no inverse");
}

void require_small(double work, const char* what) {
  if (work > 5e8) throw std::invalid_argument(std::string(what) + ": instance too large for enumeration");
}

}  // namespace

RichnessSpectrum all_lines_spectrum(const ResidueSet& a, const ResidueSet& b) {
  require_same_ambient(a, b);
  const auto pts = product(a, b);
  RichnessSpectrum s;
  s.modulus = a.ambient();
  s.size_a = a.size();
  s.size_b = b.size();

  if (a.is_field()) {
    const std::uint32_t p = a.modulus().value();
    s.by_slope.assign(p, Histogram{});
    for (std::uint32_t lam = 0; lam < p; ++lam) {
      for (std::uint32_t mu = 0; mu < p; ++mu) {
        std::uint64_t i = 0;
        for (const auto& q : pts) i += md(q.y, p) == md(std::int64_t{lam} * q.x + mu, p);
        if (i) ++s.by_slope[lam][i];
      }
    }
    for (std::uint32_t c = 0; c < p; ++c) {
      std::uint64_t i = 0;
      for (const auto& q : pts) i += md(q.x, p) == c;
      if (i) ++s.vertical[i];
    }
    return s;
  }

  // Grid: axis-parallel lines through each coordinate, oblique lines through
  // point pairs keyed by reduced slope dy/dx and intercept (y dx - x dy)/dx.
  for (auto c : a.elements()) {
    std::uint64_t i = 0;
    for (const auto& q : pts) i += q.x == c;
    if (i) ++s.vertical[i];
  }
  for (auto c : b.elements()) {
    std::uint64_t i = 0;
    for (const auto& q : pts) i += q.y == c;
    if (i) ++s.horizontal[i];
  }
  using Key = std::tuple<std::int64_t, std::int64_t, i128, i128>;
  std::set<Key> seen;
  for (std::size_t u = 0; u < pts.size(); ++u) {
    for (std::size_t v = u + 1; v < pts.size(); ++v) {
      std::int64_t dx = pts[v].x - pts[u].x;
      std::int64_t dy = pts[v].y - pts[u].y;
      if (dx == 0 || dy == 0) continue;
      if (dx < 0) {
        dx = -dx;
        dy = -dy;
      }
      const std::int64_t g = std::gcd(dx, dy);
      dx /= g;
      dy /= g;
      i128 inum = static_cast<i128>(pts[u].y) * dx - static_cast<i128>(pts[u].x) * dy;
      i128 iden = dx;
      i128 g2 = inum < 0 ? -inum : inum;
      i128 t = iden;
      while (t) {
        i128 r = g2 % t;
        g2 = t;
        t = r;
      }
      if (g2 > 1) {
        inum /= g2;
        iden /= g2;
      }
      if (!seen.insert({dy, dx, inum, iden}).second) continue;
      std::uint64_t i = 0;
      for (const auto& q : pts) {
        i += static_cast<i128>(q.y - pts[u].y) * dx == static_cast<i128>(q.x - pts[u].x) * dy;
      }
      ++s.oblique[i];
    }
  }
  return s;
}

BigInt enumerate_collinear_tuples(const ResidueSet& a, const ResidueSet& b, unsigned k) {
  require_same_ambient(a, b);
  const auto pts = product(a, b);
  const std::size_t n = pts.size();
  require_small(std::pow(static_cast<double>(n), k), "tuple enumeration");
  const auto& amb = a.ambient();
  auto zero = [&](i128 det) { return amb ? det % static_cast<i128>(amb->value()) == 0 : det == 0; };
  std::vector<std::size_t> idx(k, 0);
  BigInt count = 0;
  while (true) {
    const auto& p0 = pts[idx[0]];
    std::size_t q = k;
    for (std::size_t j = 1; j < k; ++j) {
      if (!(pts[idx[j]] == p0)) {
        q = j;
        break;
      }
    }
    bool ok = true;
    if (q < k) {
      const auto& p1 = pts[idx[q]];
      for (std::size_t j = q + 1; j < k && ok; ++j) {
        const auto& r = pts[idx[j]];
        ok = zero(static_cast<i128>(p1.x - p0.x) * (r.y - p0.y) - static_cast<i128>(p1.y - p0.y) * (r.x - p0.x));
      }
    }
    if (ok) ++count;
    std::size_t pos = 0;
    while (pos < k && ++idx[pos] == n) idx[pos++] = 0;
    if (pos == k) break;
  }
  return count;
}

BigInt additive_energy_quadruples(const ResidueSet& a, const ResidueSet& b) {
  require_same_ambient(a, b);
  const auto& amb = a.ambient();
  auto norm = [&](std::int64_t x) -> std::int64_t { return amb ? md(x, amb->value()) : x; };
  BigInt count = 0;
  for (auto a1 : a.elements())
    for (auto a2 : a.elements())
      for (auto b1 : b.elements())
        for (auto b2 : b.elements()) count += norm(a1 - b1) == norm(a2 - b2);
  return count;
}

BigInt additive_energy_k(const ResidueSet& a, const ResidueSet& b, unsigned k) {
  require_same_ambient(a, b);
  const auto& amb = a.ambient();
  std::map<std::int64_t, std::uint64_t> r;
  for (auto x : a.elements()) {
    for (auto y : b.elements()) ++r[amb ? md(x - y, amb->value()) : x - y];
  }
  BigInt sum = 0;
  for (const auto& [d, c] : r) sum += big_pow(BigInt(c), k);
  return sum;
}

BigInt mult_energy_quadruples(const ResidueSet& a, const ResidueSet& b) {
  const auto p = a.modulus().value();
  BigInt count = 0;
  for (auto a1 : a.elements())
    for (auto a2 : a.elements())
      for (auto b1 : b.elements())
        for (auto b2 : b.elements()) {
          if (!a1 || !a2 || !b1 || !b2) continue;
          count += md(a1 * b2, p) == md(a2 * b1, p);
        }
  return count;
}

BigInt mult_energy_k(const ResidueSet& a, const ResidueSet& b, unsigned k) {
  const auto p = a.modulus().value();
  BigInt sum = 0;
  for (std::uint32_t lam = 1; lam < p; ++lam) {
    std::uint64_t r = 0;
    for (auto x : a.elements())
      for (auto y : b.elements()) r += x && y && md(x, p) == md(std::int64_t{lam} * y, p);
    if (r) sum += big_pow(BigInt(r), k);
  }
  return sum;
}

ShiftedEnergy shifted_mult_energy_max(const ResidueSet& a, unsigned k) {
  const auto& p = a.modulus();
  ShiftedEnergy best{BigInt(-1), 0};
  for (std::uint32_t s = 0; s < p.value(); ++s) {
    auto as = a.shifted(s);
    auto v = mult_energy_k(as, as, k);
    if (v > best.value) best = {v, s};
  }
  return best;
}

Rational balanced_energy_quadruples(const ResidueSet& a) {
  const std::uint32_t p = a.modulus().value();
  const auto f = scaled_balanced(a);
  BigInt sum = 0;
  for (std::uint32_t x = 0; x < p; ++x)
    for (std::uint32_t y = 0; y < p; ++y)
      for (std::uint32_t z = 0; z < p; ++z) {
        const std::uint32_t w = md(std::int64_t{z} - x + y, p);  // x - y = z - w
        sum += BigInt(f[x] * f[y]) * (f[z] * f[w]);
      }
  return Rational(sum, big_pow(BigInt(p), 4));
}

Rational balanced_line_value(const ResidueSet& a, std::uint32_t lambda, std::uint32_t mu) {
  const std::uint32_t p = a.modulus().value();
  const auto f = scaled_balanced(a);
  std::int64_t sum = 0;
  for (std::uint32_t x = 0; x < p; ++x) sum += f[x] * f[md(std::int64_t{lambda} * x + mu, p)];
  return Rational(BigInt(sum), BigInt(p) * p);
}

Rational balanced_moment(const ResidueSet& a, unsigned n) {
  const std::uint32_t p = a.modulus().value();
  const auto pts = product(a, a);
  const BigInt mass = BigInt(a.size()) * a.size();
  BigInt sum = 0;
  for (std::uint32_t lam = 1; lam < p; ++lam) {
    for (std::uint32_t mu = 0; mu < p; ++mu) {
      std::int64_t i = 0;
      for (const auto& q : pts) i += md(q.y, p) == md(std::int64_t{lam} * q.x + mu, p);
      if (i < 2) continue;
      BigInt dev = BigInt(i) * p - mass;
      sum += big_pow(dev < 0 ? BigInt(-dev) : dev, n);
    }
  }
  return Rational(sum, big_pow(BigInt(p), n));
}

ShiftedBalancedEnergy balanced_shifted_mult_energy_max(const ResidueSet& a) {
  const std::uint32_t p = a.modulus().value();
  require_small(std::pow(double(p), 4), "balanced shifted energy");
  const auto f = scaled_balanced(a);
  std::vector<std::uint32_t> inv(p, 0);
  for (std::uint32_t x = 1; x < p; ++x) inv[x] = inverse_by_search(x, p);
  ShiftedBalancedEnergy best{Rational(0), 0};
  bool have = false;
  for (std::uint32_t s = 0; s < p; ++s) {
    auto g = [&](std::uint32_t x) { return f[md(std::int64_t{x} + s, p)]; };
    BigInt sum = 0;
    for (std::uint32_t x = 1; x < p; ++x)
      for (std::uint32_t y = 1; y < p; ++y)
        for (std::uint32_t z = 1; z < p; ++z) {
          const std::uint32_t w = md(std::int64_t{x} * y % p * inv[z], p);  // x y = z w
          sum += BigInt(g(x) * g(y)) * (g(z) * g(w));
        }
    Rational v(sum, big_pow(BigInt(p), 4));
    if (!have || v > best.value) {
      best = {v, s};
      have = true;
    }
  }
  return best;
}

BigInt alternating_energy_T(const ResidueSet& a, unsigned k) {
  if (k < 2 || k % 2) throw std::invalid_argument("T_k needs an even k");
  const auto el = a.elements();
  const std::size_t n = el.size();
  require_small(std::pow(double(n), 2.0 * k), "T_k enumeration");
  const auto& amb = a.ambient();
  std::vector<std::size_t> idx(2 * k, 0);
  BigInt count = 0;
  if (n == 0) return count;
  while (true) {
    std::int64_t lhs = 0, rhs = 0;
    for (unsigned j = 0; j < k; ++j) {
      const std::int64_t sign = j % 2 ? -1 : 1;
      lhs += sign * el[idx[j]];
      rhs += sign * el[idx[k + j]];
    }
    count += amb ? md(lhs - rhs, amb->value()) == 0 : lhs == rhs;
    std::size_t pos = 0;
    while (pos < 2 * k && ++idx[pos] == n) idx[pos++] = 0;
    if (pos == 2 * k) break;
  }
  return count;
}

Rational alternating_energy_T(std::span<const Rational> f, unsigned k) {
  if (k < 2 || k % 2) throw std::invalid_argument("T_k needs an even k");
  const std::size_t p = f.size();
  require_small(std::pow(double(p), k), "T_k enumeration");
  // g(s) = sum over k-tuples with x1 - x2 + ... - xk = s of f(x1)...f(xk).
  std::vector<Rational> g(p, Rational(0));
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    std::int64_t s = 0;
    Rational prod(1);
    for (unsigned j = 0; j < k; ++j) {
      s += (j % 2 ? -1 : 1) * static_cast<std::int64_t>(idx[j]);
      prod *= f[idx[j]];
    }
    g[md(s, static_cast<std::uint32_t>(p))] += prod;
    std::size_t pos = 0;
    while (pos < k && ++idx[pos] == p) idx[pos++] = 0;
    if (pos == k) break;
  }
  Rational sum(0);
  for (const auto& v : g) sum += v * v;
  return sum;
}

BigInt affine_T2(std::span<const WeightedAffine> l, const PrimeModulus& p) {
  require_small(std::pow(double(l.size()), 4), "affine T_2 enumeration");
  std::vector<AffineElement> q(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) q[i] = inverse(l[i].g, p);
  BigInt sum = 0;
  for (std::size_t i1 = 0; i1 < l.size(); ++i1)
    for (std::size_t i2 = 0; i2 < l.size(); ++i2) {
      const auto g = compose(l[i1].g, q[i2], p);
      const BigInt w12 = BigInt(l[i1].weight) * l[i2].weight;
      for (std::size_t i3 = 0; i3 < l.size(); ++i3)
        for (std::size_t i4 = 0; i4 < l.size(); ++i4) {
          if (compose(l[i3].g, q[i4], p) == g) sum += w12 * l[i3].weight * l[i4].weight;
        }
    }
  return sum;
}

Rational cartesian_T2(const ResidueSet& x, const ResidueSet& y) {
  const std::uint32_t p = x.modulus().value();
  const auto fy = scaled_balanced(y);
  BigInt sum = 0;
  for (std::uint32_t lam = 1; lam < p; ++lam) {
    std::int64_t r = 0;
    for (auto a1 : x.elements())
      for (auto a2 : x.elements()) r += md(a1, p) == md(std::int64_t{lam} * a2, p);
    if (!r) continue;
    BigInt inner = 0;
    for (std::uint32_t mu = 0; mu < p; ++mu) {
      std::int64_t g = 0;
      for (std::uint32_t b = 0; b < p; ++b) g += fy[md(mu + std::int64_t{lam} * b, p)] * fy[b];
      inner += BigInt(g) * g;
    }
    sum += BigInt(r) * r * inner;
  }
  return Rational(sum, big_pow(BigInt(p), 4));
}

BigInt translation_quadruples(const ResidueSet& a, const ResidueSet& b, const ResidueSet& x, const ResidueSet& y) {
  const std::uint32_t p = a.modulus().value();
  BigInt count = 0;
  for (auto aa : a.elements())
    for (auto bb : b.elements())
      for (auto xx : x.elements())
        for (auto yy : y.elements()) count += md(yy, p) == md(bb * xx + aa, p);
  return count;
}

LineStats line_point_stats(std::span<const AffineElement> points, const PrimeModulus& p) {
  if (points.empty()) throw std::invalid_argument("empty point set");
  std::set<AffineElement> pts(points.begin(), points.end());
  const std::uint32_t pv = p.value();
  LineStats st;
  for (std::uint32_t c = 0; c < pv; ++c) {
    std::uint64_t i = 0;
    for (const auto& q : pts) i += q.a == c;
    st.m = std::max(st.m, i);
  }
  st.big_m = st.m;
  for (std::uint32_t lam = 0; lam < pv; ++lam)
    for (std::uint32_t mu = 0; mu < pv; ++mu) {
      std::uint64_t i = 0;
      for (const auto& q : pts) i += q.b == md(std::int64_t{lam} * q.a + mu, pv);
      st.big_m = std::max(st.big_m, i);
    }
  return st;
}

}  // namespace inclab::oracle
