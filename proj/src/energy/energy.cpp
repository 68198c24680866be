#include "inclab/energy.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "inclab/parallel.hpp"
#include "inclab/simd/kernels.hpp"

namespace inclab {

namespace {

void require_k(unsigned k) {
  if (k < 2) throw std::invalid_argument("energy exponent k must be >= 2");
}

BigInt power_sum(std::span<const std::uint64_t> r, unsigned k) {
  ExactSum sum;
  for (auto v : r) {
    if (v) sum.add_power(v, k);
  }
  return sum.value();
}

BigInt square(const BigInt& x) { return x * x; }

}  // namespace

CountArray difference_counts(const ResidueSet& a, const ResidueSet& b, CorrelationStrategy strategy) {
  require_same_ambient(a, b);
  require_field(a, "difference_counts");
  const auto& p = a.modulus();
  return cyclic_correlation(indicator_array(a.residues(), p), indicator_array(b.residues(), p), p, strategy);
}

EnergyValue additive_energy_k(const ResidueSet& a, const ResidueSet& b, unsigned k, CorrelationStrategy strategy) {
  require_k(k);
  require_same_ambient(a, b);
  if (a.is_field()) {
    auto r = difference_counts(a, b, strategy);
    if (k == 2) return sum_of_squares(r);
    return power_sum(r.view(), k);
  }
  std::vector<std::int64_t> diffs;
  diffs.reserve(a.size() * b.size());
  for (auto x : a.elements()) {
    for (auto y : b.elements()) diffs.push_back(x - y);
  }
  std::sort(diffs.begin(), diffs.end());
  std::vector<std::uint64_t> runs;
  for (std::size_t i = 0; i < diffs.size();) {
    std::size_t j = i;
    while (j < diffs.size() && diffs[j] == diffs[i]) ++j;
    runs.push_back(j - i);
    i = j;
  }
  return power_sum(runs, k);
}

DiscreteLog::DiscreteLog(const PrimeModulus& p) {
  if (p.value() > kMaxPrime) throw std::length_error("discrete log table limited to p <= 2^26");
  g_ = primitive_root(p);
  const std::uint32_t n = p.value() - 1;
  log_.assign(p.value(), 0);
  exp_.assign(n, 0);
  std::uint32_t x = 1;
  for (std::uint32_t e = 0; e < n; ++e) {
    exp_[e] = x;
    log_[x] = e;
    x = p.mul(x, g_);
  }
}

namespace {

// Counts ratios a / b over zero-free residue lists. With a log table the
// ratio is log a - log b mod p - 1, computed by the sub_mod kernel.
class RatioCounter {
 public:
  RatioCounter(const PrimeModulus& p, const DiscreteLog* dl) : p_(p), dl_(dl) {
    if (dl_) count_.assign(p.value() - 1, 0);
  }

  // visit(r) for each nonzero multiplicity r(lambda).
  template <class Visit>
  void run(std::span<const std::uint32_t> as, std::span<const std::uint32_t> bs, Visit&& visit) {
    if (as.empty() || bs.empty()) return;
    if (!dl_) {
      sorted_run(as, bs, visit);
      return;
    }
    la_.resize(as.size());
    out_.resize(as.size());
    for (std::size_t i = 0; i < as.size(); ++i) la_[i] = dl_->log(as[i]);
    const auto& k = simd::kernels();
    const std::uint32_t m = p_.value() - 1;
    for (auto b : bs) {
      k.sub_mod(la_.data(), la_.size(), dl_->log(b), m, out_.data());
      for (auto e : out_) {
        if (count_[e]++ == 0) touched_.push_back(e);
      }
    }
    for (auto e : touched_) {
      visit(count_[e]);
      count_[e] = 0;
    }
    touched_.clear();
  }

  // Fills r indexed by lambda.
  void fill(std::span<const std::uint32_t> as, std::span<const std::uint32_t> bs, CountArray& r) {
    if (as.empty() || bs.empty()) return;
    if (!dl_) {
      for (auto b : bs) {
        const auto bi = p_.inv(b);
        for (auto a : as) ++r[p_.mul(a, bi)];
      }
      return;
    }
    for (auto b : bs) {
      const auto lb = dl_->log(b);
      const std::uint32_t m = p_.value() - 1;
      for (auto a : as) {
        const auto la = dl_->log(a);
        ++r[dl_->exp(la >= lb ? la - lb : la + m - lb)];
      }
    }
  }

 private:
  template <class Visit>
  void sorted_run(std::span<const std::uint32_t> as, std::span<const std::uint32_t> bs, Visit& visit) {
    std::vector<std::uint32_t> lam;
    lam.reserve(as.size() * bs.size());
    for (auto b : bs) {
      const auto bi = p_.inv(b);
      for (auto a : as) lam.push_back(p_.mul(a, bi));
    }
    std::sort(lam.begin(), lam.end());
    for (std::size_t i = 0; i < lam.size();) {
      std::size_t j = i;
      while (j < lam.size() && lam[j] == lam[i]) ++j;
      visit(static_cast<std::uint32_t>(j - i));
      i = j;
    }
  }

  const PrimeModulus& p_;
  const DiscreteLog* dl_;
  std::vector<std::uint32_t> count_;
  std::vector<std::uint32_t> touched_;
  std::vector<std::uint32_t> la_;
  std::vector<std::uint32_t> out_;
};

std::vector<std::uint32_t> nonzero_residues(const ResidueSet& a) {
  std::vector<std::uint32_t> out;
  for (auto r : a.residues()) {
    if (r) out.push_back(r);
  }
  return out;
}

std::optional<DiscreteLog> maybe_log(const PrimeModulus& p) {
  if (p.value() > DiscreteLog::kMaxPrime) return std::nullopt;
  return DiscreteLog(p);
}

}  // namespace

CountArray ratio_counts(const ResidueSet& a, const ResidueSet& b) {
  require_same_ambient(a, b);
  require_field(a, "ratio_counts");
  const auto& p = a.modulus();
  auto dl = maybe_log(p);
  CountArray r(p.value());
  RatioCounter rc(p, dl ? &*dl : nullptr);
  rc.fill(nonzero_residues(a), nonzero_residues(b), r);
  return r;
}

EnergyValue multiplicative_energy_k(const ResidueSet& a, const ResidueSet& b, unsigned k) {
  require_k(k);
  require_same_ambient(a, b);
  require_field(a, "multiplicative energy");
  const auto as = nonzero_residues(a);
  const auto bs = nonzero_residues(b);
  if (as.empty() || bs.empty()) throw std::invalid_argument("multiplicative energy: zero-free part is empty");
  const auto& p = a.modulus();
  auto dl = maybe_log(p);
  RatioCounter rc(p, dl ? &*dl : nullptr);
  ExactSum sum;
  rc.run(as, bs, [&](std::uint32_t r) { sum.add_power(r, k); });
  return sum.value();
}

ShiftedEnergy shifted_mult_energy_max(const ResidueSet& a, unsigned k, unsigned workers) {
  require_k(k);
  require_field(a, "shifted multiplicative energy");
  if (a.size() < 2) throw std::invalid_argument("shifted multiplicative energy needs |A| >= 2");
  const auto& p = a.modulus();
  auto dl = maybe_log(p);
  const unsigned w = resolve_workers(workers, p.value());
  std::vector<ShiftedEnergy> best(w, ShiftedEnergy{BigInt(-1), 0});
  parallel_blocks(p.value(), w, [&](unsigned worker, std::size_t begin, std::size_t end) {
    RatioCounter rc(p, dl ? &*dl : nullptr);
    std::vector<std::uint32_t> shifted;
    auto& mine = best[worker];
    for (std::size_t s = begin; s < end; ++s) {
      shifted.clear();
      for (auto r : a.residues()) {
        const auto v = p.sub(r, static_cast<std::uint32_t>(s));
        if (v) shifted.push_back(v);
      }
      ExactSum sum;
      rc.run(shifted, shifted, [&](std::uint32_t r) { sum.add_power(r, k); });
      auto v = sum.value();
      if (v > mine.value) mine = {std::move(v), static_cast<std::uint32_t>(s)};
    }
  });
  ShiftedEnergy out = best[0];
  for (std::size_t i = 1; i < best.size(); ++i) {
    if (best[i].value > out.value) out = best[i];
  }
  return out;
}

Rational balanced_additive_energy(const ResidueSet& a) {
  require_field(a, "balanced energy");
  const auto& p = a.modulus();
  const auto r = difference_counts(a, a);
  const BigInt n2 = BigInt(a.size()) * a.size();
  BigInt num = 0;
  for (auto v : r.values) num += square(BigInt(v) * p.value() - n2);
  return Rational(num, BigInt(p.value()) * p.value());
}

OffsetArray balanced_array(const ResidueSet& a) {
  require_field(a, "balanced array");
  const auto& p = a.modulus();
  OffsetArray f;
  f.alpha = p.value();
  f.beta = a.size();
  f.denom = p.value();
  f.x = indicator_array(a.residues(), p);
  return f;
}

OffsetArray plain_array(const ResidueSet& a) {
  require_field(a, "plain array");
  OffsetArray f;
  f.x = indicator_array(a.residues(), a.modulus());
  return f;
}

std::vector<Rational> entries(const OffsetArray& f) {
  std::vector<Rational> out;
  out.reserve(f.x.size());
  for (auto v : f.x.values) out.emplace_back(f.alpha * v - f.beta, f.denom);
  return out;
}

EnergyValue alternating_energy_T(const ResidueSet& a, unsigned k) {
  const Rational t = alternating_energy_T(plain_array(a), k);
  return numerator(t);
}

Rational alternating_energy_T(const OffsetArray& f, unsigned k) {
  if (k < 2 || k % 2) throw std::invalid_argument("T_k needs an even k >= 2");
  const std::size_t n = f.x.size();
  if (n < 3 || !is_prime(n)) throw std::invalid_argument("T_k array length must be a prime");
  const PrimeModulus p(n);
  const BigInt sx = f.x.total();
  const BigInt pn(n);
  // Autocorrelation of alpha x - beta is alpha^2 d_x - (2 alpha beta S_x - beta^2 p).
  OffsetArray d;
  d.alpha = f.alpha * f.alpha;
  d.beta = 2 * f.alpha * f.beta * sx - f.beta * f.beta * pn;
  d.denom = f.denom * f.denom;
  d.x = cyclic_correlation(f.x, f.x, p);
  const BigInt sd = d.x.total();

  OffsetArray c = d;
  BigInt sc = sd;
  for (unsigned i = 2; i <= k / 2; ++i) {
    // (a x - b) * (g y - h) = a g (x * y) - (a h S_x + b g S_y - b h p).
    OffsetArray next;
    next.alpha = c.alpha * d.alpha;
    next.beta = c.alpha * d.beta * sc + c.beta * d.alpha * sd - c.beta * d.beta * pn;
    next.denom = c.denom * d.denom;
    next.x = cyclic_convolution(c.x, d.x, p);
    c = std::move(next);
    sc = c.x.total();
  }
  const BigInt sq = sum_of_squares(c.x);
  const BigInt num = c.alpha * c.alpha * sq - 2 * c.alpha * c.beta * sc + c.beta * c.beta * pn;
  return Rational(num, c.denom * c.denom);
}

namespace {

std::uint64_t key_of(const AffineElement& g, std::uint32_t p) { return std::uint64_t{g.a} * p + g.b; }
AffineElement element_of(std::uint64_t key, std::uint32_t p) {
  return {static_cast<std::uint32_t>(key / p), static_cast<std::uint32_t>(key % p)};
}

void add_square(ExactSum& pos, i128 r) {
  if (r == 0) return;
  const u128 m = r < 0 ? static_cast<u128>(-r) : static_cast<u128>(r);
  if (m >> 64) {
    pos.add(square(to_big(m)));
  } else {
    pos.add(m * m);
  }
}

i128 checked_mul_add(i128 acc, i128 x, i128 y) {
  i128 prod = 0;
  if (__builtin_mul_overflow(x, y, &prod) || __builtin_add_overflow(acc, prod, &acc)) {
    throw std::overflow_error("affine energy representation count exceeds 128 bits");
  }
  return acc;
}

// Sparse or dense map g -> r(g).
struct AffineCounts {
  std::uint32_t p;
  bool dense;
  std::vector<i128> table;
  std::vector<std::uint64_t> touched;
  std::unordered_map<std::uint64_t, i128> map;

  explicit AffineCounts(std::uint32_t prime) : p(prime), dense(prime <= 1024) {
    if (dense) table.assign(std::size_t{prime} * prime, 0);
  }
  void add(std::uint64_t key, i128 x, i128 y) {
    if (dense) {
      auto& slot = table[key];
      const bool was_zero = slot == 0;
      slot = checked_mul_add(slot, x, y);
      if (was_zero) touched.push_back(key);
    } else {
      auto& slot = map[key];
      slot = checked_mul_add(slot, x, y);
    }
  }
  // Nonzero entries in increasing key order.
  std::vector<std::pair<std::uint64_t, i128>> items() const {
    std::vector<std::pair<std::uint64_t, i128>> out;
    if (dense) {
      for (auto key : touched) {
        if (table[key] != 0) out.emplace_back(key, table[key]);
      }
    } else {
      for (const auto& [key, v] : map) {
        if (v != 0) out.emplace_back(key, v);
      }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    out.erase(std::unique(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first == y.first; }),
              out.end());
    return out;
  }
};

}  // namespace

BigInt affine_T(std::span<const WeightedAffine> l, unsigned k, const PrimeModulus& p) {
  if (k != 2 && k != 4) throw std::invalid_argument("affine T_k supports k in {2, 4}");
  if (l.size() > kMaxAffine) throw std::invalid_argument("affine T_k limited to 5000 elements");
  const std::uint32_t pv = p.value();
  std::vector<std::uint32_t> inv_a(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i].g.a % pv == 0) throw std::invalid_argument("affine element with zero abscissa");
    if (l[i].g.a >= pv || l[i].g.b >= pv) throw std::invalid_argument("affine element not reduced");
    inv_a[i] = p.inv(l[i].g.a);
  }
  // l1 o l2^{-1} = (a1 / a2, b1 - (a1 / a2) b2).
  AffineCounts r(pv);
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i].weight == 0) continue;
    for (std::size_t j = 0; j < l.size(); ++j) {
      if (l[j].weight == 0) continue;
      const auto lam = p.mul(l[i].g.a, inv_a[j]);
      const AffineElement g{lam, p.sub(l[i].g.b, p.mul(lam, l[j].g.b))};
      r.add(key_of(g, pv), l[i].weight, l[j].weight);
    }
  }
  const auto items = r.items();
  ExactSum sum;
  if (k == 2) {
    for (const auto& [key, v] : items) add_square(sum, v);
    return sum.value();
  }
  std::vector<AffineElement> gs(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) gs[i] = element_of(items[i].first, pv);
  AffineCounts rr(pv);
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = 0; j < items.size(); ++j) {
      rr.add(key_of(compose(gs[i], gs[j], p), pv), items[i].second, items[j].second);
    }
  }
  for (const auto& [key, v] : rr.items()) add_square(sum, v);
  return sum.value();
}

BigInt affine_T(std::span<const AffineElement> l, unsigned k, const PrimeModulus& p) {
  std::vector<WeightedAffine> w;
  w.reserve(l.size());
  for (const auto& g : l) w.push_back({g, 1});
  return affine_T(w, k, p);
}

std::vector<WeightedAffine> balanced_cartesian(const ResidueSet& x, const ResidueSet& y) {
  require_same_ambient(x, y);
  require_field(x, "balanced Cartesian family");
  const auto& p = x.modulus();
  const auto ys = y.indicator();
  const auto ny = static_cast<std::int64_t>(y.size());
  std::vector<WeightedAffine> out;
  for (auto a : x.residues()) {
    if (a == 0) throw std::invalid_argument("Cartesian family needs 0 outside X");
    for (std::uint32_t b = 0; b < p.value(); ++b) {
      const std::int64_t w = (ys[b] ? std::int64_t{p.value()} : 0) - ny;
      if (w != 0) out.push_back({{a, b}, w});
    }
  }
  return out;
}

ShiftedBalancedEnergy balanced_shifted_mult_energy_max(const ResidueSet& a, unsigned workers) {
  require_field(a, "balanced shifted multiplicative energy");
  const auto& p = a.modulus();
  auto dl = maybe_log(p);
  const BigInt pb(p.value());
  const BigInt n(a.size());
  const BigInt p2 = pb * pb;
  const BigInt p4 = p2 * p2;
  const unsigned w = resolve_workers(workers, p.value());
  struct Best {
    BigInt num;
    std::uint32_t shift = 0;
    bool set = false;
  };
  std::vector<Best> best(w);
  // For A' = (A - s) \ 0 with n' = |A'| and ratio counts r:
  // p^2 R(lambda) = p^2 r(lambda) + C with C = n^2 (p - 1) - 2 p n n', and
  // p^4 E* = p^4 sum r^2 + 2 p^2 C n'^2 + (p - 1) C^2.
  parallel_blocks(p.value(), w, [&](unsigned worker, std::size_t begin, std::size_t end) {
    RatioCounter rc(p, dl ? &*dl : nullptr);
    std::vector<std::uint32_t> shifted;
    auto& mine = best[worker];
    for (std::size_t s = begin; s < end; ++s) {
      shifted.clear();
      for (auto r : a.residues()) {
        const auto v = p.sub(r, static_cast<std::uint32_t>(s));
        if (v) shifted.push_back(v);
      }
      ExactSum sq;
      rc.run(shifted, shifted, [&](std::uint32_t r) { sq.add_power(r, 2); });
      const BigInt np(shifted.size());
      const BigInt c = n * n * (pb - 1) - 2 * pb * n * np;
      BigInt num = p4 * sq.value() + 2 * p2 * c * np * np + (pb - 1) * c * c;
      if (!mine.set || num > mine.num) mine = {std::move(num), static_cast<std::uint32_t>(s), true};
    }
  });
  Best out = best[0];
  for (std::size_t i = 1; i < best.size(); ++i) {
    if (best[i].set && best[i].num > out.num) out = best[i];
  }
  return {Rational(out.num, p4), out.shift};
}

}  // namespace inclab

namespace inclab {

EnergyValue grid_mult_energy(const ResidueSet& a, const Rational& s) {
  if (a.is_field()) throw std::invalid_argument("grid_mult_energy needs a grid set");
  // (a1 - s)(a4 - s) = (a2 - s)(a3 - s) with s = u / v, scaled by v^2.
  const BigInt u = numerator(s);
  const BigInt v = denominator(s);
  std::vector<BigInt> x;
  for (auto e : a.elements()) {
    BigInt t = BigInt(e) * v - u;
    if (t != 0) x.push_back(std::move(t));
  }
  std::map<BigInt, std::uint64_t> prods;
  for (const auto& p : x) {
    for (const auto& q : x) ++prods[p * q];
  }
  BigInt sum = 0;
  for (const auto& [k, c] : prods) sum += BigInt(c) * c;
  return sum;
}

GridShiftedEnergy grid_shifted_mult_energy_max(const ResidueSet& a) {
  if (a.is_field()) throw std::invalid_argument("grid_shifted_mult_energy_max needs a grid set");
  if (a.size() < 2) throw std::invalid_argument("shifted multiplicative energy needs |A| >= 2");
  if (a.size() > kMaxGridShiftSet) throw std::invalid_argument("grid shifted energy limited to 64 elements");
  const auto el = a.elements();
  const std::int64_t n = static_cast<std::int64_t>(el.size());
  // Solutions valid for every s: {a1, a4} = {a2, a3}.
  const BigInt generic = BigInt(2 * n * n - n);
  std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> extra;
  for (auto a1 : el)
    for (auto a2 : el)
      for (auto a3 : el)
        for (auto a4 : el) {
          std::int64_t den = a1 + a4 - a2 - a3;
          std::int64_t num = a1 * a4 - a2 * a3;
          if (den == 0) continue;
          if (den < 0) {
            den = -den;
            num = -num;
          }
          const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
          num /= g;
          den /= g;
          if (den == 1 && a.contains(num)) continue;
          ++extra[{num, den}];
        }
  GridShiftedEnergy best{generic, Rational(0)};
  bool exact_generic = true;
  for (const auto& [s, c] : extra) {
    const BigInt v = generic + c;
    if (v > best.value) {
      best = {v, Rational(BigInt(s.first), BigInt(s.second))};
      exact_generic = false;
    }
  }
  for (auto s : el) {
    auto v = grid_mult_energy(a, Rational(s));
    if (v > best.value || (v == best.value && exact_generic && Rational(s) < best.shift)) {
      best = {v, Rational(s)};
      exact_generic = false;
    }
  }
  if (exact_generic) {
    // Any shift outside A and the candidate set attains the generic value.
    std::int64_t s = el.back() + 1;
    while (extra.count({s, 1})) ++s;
    best.shift = Rational(s);
  }
  return best;
}

}  // namespace inclab
