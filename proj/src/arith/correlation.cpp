#include "inclab/correlation.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "inclab/simd/kernels.hpp"

namespace inclab {

BigInt CountArray::total() const {
  ExactSum s;
  for (auto x : values) s.add(u128{x});
  return s.value();
}

std::uint64_t CountArray::max() const {
  return values.empty() ? 0 : *std::max_element(values.begin(), values.end());
}

std::size_t CountArray::support_size() const {
  return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](auto x) { return x != 0; }));
}

CountArray indicator_array(std::span<const std::uint32_t> residues, const PrimeModulus& p) {
  CountArray a(p.value());
  for (auto r : residues) a[r % p.value()] = 1;
  return a;
}

namespace {

constexpr std::uint64_t kU31Limit = std::uint64_t{1} << 31;

void add_product(u128& acc, std::uint64_t x, std::uint64_t y) {
  u128 prod;
  if (__builtin_mul_overflow(u128{x}, u128{y}, &prod) || __builtin_add_overflow(acc, prod, &acc)) {
    throw std::overflow_error("correlation entry exceeds 128 bits");
  }
}

CountArray narrow(const std::vector<u128>& wide) {
  CountArray out(wide.size());
  for (std::size_t i = 0; i < wide.size(); ++i) {
    if (wide[i] > std::numeric_limits<std::uint64_t>::max()) {
      throw std::overflow_error("correlation entry exceeds 64 bits");
    }
    out[i] = static_cast<std::uint64_t>(wide[i]);
  }
  return out;
}

std::vector<u128> correlate_naive_scalar(const CountArray& u, const CountArray& v, std::size_t p) {
  std::vector<u128> d(p, 0);
  for (std::size_t x = 0; x < p; ++x) {
    u128 acc = 0;
    for (std::size_t a = 0; a < p; ++a) {
      std::size_t b = a >= x ? a - x : a + p - x;
      add_product(acc, u[a], v[b]);
    }
    d[x] = acc;
  }
  return d;
}

std::vector<u128> correlate_sparse(const CountArray& u, const CountArray& v, std::size_t p) {
  std::vector<std::size_t> su, sv;
  for (std::size_t i = 0; i < p; ++i) {
    if (u[i]) su.push_back(i);
    if (v[i]) sv.push_back(i);
  }
  std::vector<u128> d(p, 0);
  for (auto a : su) {
    for (auto b : sv) {
      std::size_t x = a >= b ? a - b : a + p - b;
      add_product(d[x], u[a], v[b]);
    }
  }
  return d;
}

bool fits_u31(const CountArray& a) { return a.max() < kU31Limit; }

std::vector<u128> correlate_naive_simd(const CountArray& u, const CountArray& v, std::size_t p) {
  if (!fits_u31(u) || !fits_u31(v)) return correlate_naive_scalar(u, v, p);
  std::vector<std::uint32_t> u32(u.values.begin(), u.values.end());
  std::vector<std::uint32_t> v32(v.values.begin(), v.values.end());
  const auto& k = simd::kernels();
  std::vector<u128> d(p, 0);
  // a in [x, p) pairs with v[a - x]; a in [0, x) pairs with v[a - x + p].
  for (std::size_t x = 0; x < p; ++x) {
    d[x] = k.dot_u31(u32.data() + x, v32.data(), p - x) + k.dot_u31(u32.data(), v32.data() + (p - x), x);
  }
  return d;
}

bool correlate_ntt(const CountArray& u, const CountArray& v, std::size_t p, std::vector<u128>& d) {
  // w(j) = v(p-1-j); c = u * w; then d(x) = c(p-1+x) + c(x-1).
  std::vector<std::uint64_t> w(v.values.rbegin(), v.values.rend());
  std::vector<u128> c;
  if (!detail::ntt_linear_convolution(u.values, w, c)) return false;
  d.assign(p, 0);
  for (std::size_t x = 0; x < p; ++x) {
    u128 s = c[p - 1 + x];
    if (x >= 1) s += c[x - 1];
    d[x] = s;
  }
  return true;
}

}  // namespace

CountArray cyclic_correlation(const CountArray& u, const CountArray& v, const PrimeModulus& p,
                              CorrelationStrategy strategy) {
  const std::size_t n = p.value();
  if (u.size() != n || v.size() != n) {
    throw std::invalid_argument("cyclic_correlation: arrays must have length p");
  }
  if (strategy == CorrelationStrategy::automatic) {
    const double work = static_cast<double>(u.support_size()) * static_cast<double>(v.support_size());
    const double dense = static_cast<double>(n) * static_cast<double>(n);
    if (work * 16.0 <= dense) {
      strategy = CorrelationStrategy::sparse;
    } else if (n >= 4096) {
      strategy = CorrelationStrategy::ntt;
    } else {
      strategy = CorrelationStrategy::naive_simd;
    }
  }
  switch (strategy) {
    case CorrelationStrategy::naive_scalar: return narrow(correlate_naive_scalar(u, v, n));
    case CorrelationStrategy::naive_simd: return narrow(correlate_naive_simd(u, v, n));
    case CorrelationStrategy::sparse: return narrow(correlate_sparse(u, v, n));
    case CorrelationStrategy::ntt: {
      std::vector<u128> d;
      if (correlate_ntt(u, v, n, d)) return narrow(d);
      return narrow(correlate_sparse(u, v, n));
    }
    case CorrelationStrategy::automatic: break;
  }
  throw std::logic_error("unreachable correlation strategy");
}

CountArray cyclic_convolution(const CountArray& u, const CountArray& v, const PrimeModulus& p,
                              CorrelationStrategy strategy) {
  const std::size_t n = p.value();
  if (u.size() != n || v.size() != n) {
    throw std::invalid_argument("cyclic_convolution: arrays must have length p");
  }
  // sum_y u(y) v(x - y) = sum_y u(y) w(y - x) with w(z) = v(-z).
  CountArray reflected(n);
  for (std::size_t z = 0; z < n; ++z) reflected[z] = v[z == 0 ? 0 : n - z];
  return cyclic_correlation(u, reflected, p, strategy);
}

BigInt sum_of_squares(const CountArray& a) {
  if (a.max() < kU31Limit) {
    std::vector<std::uint32_t> a32(a.values.begin(), a.values.end());
    return to_big(simd::kernels().dot_u31(a32.data(), a32.data(), a32.size()));
  }
  ExactSum s;
  for (auto x : a.values) s.add_power(x, 2);
  return s.value();
}

}  // namespace inclab
