#include "inclab/counts.hpp"

#include <stdexcept>

#include "inclab/correlation.hpp"
#include "inclab/parallel.hpp"

namespace inclab {

std::string to_string(MomentFilter f) {
  switch (f) {
    case MomentFilter::all_i_ge_2: return "all_i_ge_2";
    case MomentFilter::slope_only_i_ge_2: return "slope_only_i_ge_2";
    case MomentFilter::slope_nonzero_all_i: return "slope_nonzero_all_i";
    case MomentFilter::tilde: return "tilde";
  }
  return "unknown";
}

MomentFilter parse_moment_filter(const std::string& s) {
  for (auto f : {MomentFilter::all_i_ge_2, MomentFilter::slope_only_i_ge_2, MomentFilter::slope_nonzero_all_i,
                 MomentFilter::tilde}) {
    if (to_string(f) == s) return f;
  }
  throw std::invalid_argument("unknown moment filter '" + s + "'");
}

Histogram filtered_histogram(const RichnessSpectrum& s, MomentFilter filter) {
  Histogram h;
  auto keep_ge2 = [](const Histogram& in) {
    Histogram out;
    for (const auto& [i, c] : in) {
      if (i >= 2) out[i] = c;
    }
    return out;
  };
  switch (filter) {
    case MomentFilter::all_i_ge_2: return keep_ge2(s.all_classes());
    case MomentFilter::slope_only_i_ge_2: return keep_ge2(s.slope_class());
    case MomentFilter::slope_nonzero_all_i:
      if (!s.is_field()) throw std::invalid_argument("slope_nonzero_all_i needs a field spectrum");
      return s.slope_nonzero();
    case MomentFilter::tilde: return keep_ge2(s.slope_nonzero());
  }
  return h;
}

MomentValue spectrum_moment(const RichnessSpectrum& s, unsigned k, MomentFilter filter) {
  if (k < 2) throw std::invalid_argument("moment exponent k must be >= 2");
  return {power_sum(filtered_histogram(s, filter), k), filter, k};
}

MomentValue spectrum_moment(const ResidueSet& a, const ResidueSet& b, unsigned k, MomentFilter filter,
                            unsigned workers) {
  if (k < 2) throw std::invalid_argument("moment exponent k must be >= 2");
  return spectrum_moment(grid_spectrum(a, b, workers), k, filter);
}

BigInt collinear_tuples_oracle(const ResidueSet& a, const ResidueSet& b, unsigned k) {
  require_same_ambient(a, b);
  if (k < 2) throw std::invalid_argument("tuple length k must be >= 2");
  const std::size_t n = a.size() * b.size();
  if (n > kMaxOraclePoints) throw std::invalid_argument("collinear tuple oracle limited to 512 points");
  std::vector<IntPoint> pts;
  pts.reserve(n);
  for (auto x : a.elements()) {
    for (auto y : b.elements()) pts.push_back({x, y});
  }
  const auto& amb = a.ambient();
  auto collinear = [&](const IntPoint& p, const IntPoint& q, const IntPoint& r) {
    const i128 det = static_cast<i128>(q.x - p.x) * (r.y - p.y) - static_cast<i128>(q.y - p.y) * (r.x - p.x);
    if (!amb) return det == 0;
    return det % static_cast<i128>(amb->value()) == 0;
  };
  // Classify a tuple by its first entry P and the first index j with a
  // different entry Q: entries after j lie on line PQ, n(P, Q) choices each.
  ExactSum total;
  for (const auto& p : pts) {
    total.add(u128{1});
    for (const auto& q : pts) {
      if (q == p) continue;
      std::uint64_t on_line = 0;
      for (const auto& r : pts) on_line += collinear(p, q, r);
      for (unsigned j = 2; j <= k; ++j) total.add_power(on_line, k - j);
    }
  }
  return total.value();
}

EnergyValue tilde_mult_energy(const ResidueSet& a, const ResidueSet& b, unsigned k) {
  return multiplicative_energy_k(a, b, k);
}

Rational balanced_moment(const RichnessSpectrum& s, unsigned n) {
  if (n < 2) throw std::invalid_argument("balanced moment exponent n must be >= 2");
  if (!s.is_field()) throw std::invalid_argument("balanced moment needs a field spectrum");
  const BigInt p(s.modulus->value());
  const BigInt mass = BigInt(s.size_a) * s.size_b;
  BigInt num = 0;
  for (const auto& [i, c] : s.slope_nonzero()) {
    if (i < 2) continue;
    BigInt dev = p * i - mass;
    if (dev < 0) dev = -dev;
    num += big_pow(dev, n) * c;
  }
  return Rational(num, big_pow(p, n));
}

Rational balanced_moment(const ResidueSet& a, unsigned n, unsigned workers) {
  require_field(a, "balanced moment");
  if (n < 2) throw std::invalid_argument("balanced moment exponent n must be >= 2");
  return balanced_moment(grid_spectrum(a, a, workers), n);
}

namespace {

bool on_line(const Point& q, const LineId& line, const std::optional<PrimeModulus>& amb) {
  if (const auto* il = std::get_if<IntLine>(&line)) {
    if (amb) throw std::invalid_argument("integer line used over a prime field");
    return il->contains(q);
  }
  if (!amb) throw std::invalid_argument("prime-field line used on the integer grid");
  const auto& p = *amb;
  const auto x = p.reduce(q.x);
  const auto y = p.reduce(q.y);
  if (const auto* s = std::get_if<SlopeLine>(&line)) return y == p.add(p.mul(s->lambda, x), p.reduce(s->mu));
  return x == p.reduce(std::get<VerticalLine>(line).c);
}

}  // namespace

BigInt incidence_count(std::span<const Point> points, std::span<const LineId> lines,
                       const std::optional<PrimeModulus>& ambient) {
  ExactSum total;
  for (const auto& l : lines) {
    std::uint64_t hits = 0;
    for (const auto& q : points) hits += on_line(q, l, ambient);
    total.add(u128{hits});
  }
  return total.value();
}

BigInt incidence_count(const ResidueSet& a, const ResidueSet& b, std::span<const LineId> lines) {
  require_same_ambient(a, b);
  if (!a.is_field()) {
    std::vector<Point> pts;
    for (auto x : a.elements()) {
      for (auto y : b.elements()) pts.push_back({x, y});
    }
    return incidence_count(pts, lines, std::nullopt);
  }
  const auto& p = a.modulus();
  const auto bind = b.indicator();
  ExactSum total;
  for (const auto& l : lines) {
    if (std::holds_alternative<IntLine>(l)) throw std::invalid_argument("integer line used over a prime field");
    std::uint64_t hits = 0;
    if (const auto* s = std::get_if<SlopeLine>(&l)) {
      const auto lam = p.reduce(s->lambda);
      const auto mu = p.reduce(s->mu);
      for (auto x : a.residues()) hits += bind[p.add(p.mul(lam, x), mu)];
    } else if (a.contains(std::get<VerticalLine>(l).c)) {
      hits = b.size();
    }
    total.add(u128{hits});
  }
  return total.value();
}

TranslationCount translation_quadruples(const ResidueSet& a, const ResidueSet& b, const ResidueSet& x,
                                        const ResidueSet& y, bool theorem_mode, unsigned workers) {
  require_same_ambient(a, b);
  require_same_ambient(a, x);
  require_same_ambient(a, y);
  require_field(a, "translation_quadruples");
  if (theorem_mode && x.contains(0)) throw std::invalid_argument("theorem mode requires 0 outside X");
  const auto& p = a.modulus();
  TranslationCount out{BigInt(0), Rational(0)};
  if (a.empty() || b.empty() || x.empty() || y.empty()) return out;
  // d(t) = |{a : a + t in Y}|, so the count is sum_{x, b} d(x b).
  const auto d = cyclic_correlation(indicator_array(y.residues(), p), indicator_array(a.residues(), p), p);
  const auto xs = x.residues();
  const auto bs = b.residues();
  const unsigned w = resolve_workers(workers, xs.size());
  std::vector<ExactSum> partial(w);
  parallel_blocks(xs.size(), w, [&](unsigned worker, std::size_t begin, std::size_t end) {
    u128 acc = 0;
    for (std::size_t i = begin; i < end; ++i) {
      for (auto bb : bs) acc += d[p.mul(xs[i], bb)];
    }
    partial[worker].add(acc);
  });
  BigInt count = 0;
  for (const auto& s : partial) count += s.value();
  const BigInt main_num = BigInt(a.size()) * b.size() * x.size() * y.size();
  out.count = count;
  out.error = Rational(count) - Rational(main_num, BigInt(p.value()));
  return out;
}

}  // namespace inclab
