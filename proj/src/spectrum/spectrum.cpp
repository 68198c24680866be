#include "inclab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

#include "inclab/parallel.hpp"
#include "inclab/simd/kernels.hpp"

namespace inclab {

void merge_into(Histogram& into, const Histogram& from) {
  for (const auto& [i, c] : from) into[i] += c;
}

BigInt power_sum(const Histogram& h, unsigned k, std::uint64_t min_richness) {
  ExactSum sum;
  for (const auto& [i, c] : h) {
    if (i >= min_richness) sum.add_power_times(i, k, c);
  }
  return sum.value();
}

std::uint64_t line_count(const Histogram& h, std::uint64_t min_richness) {
  std::uint64_t n = 0;
  for (const auto& [i, c] : h) {
    if (i >= min_richness) n += c;
  }
  return n;
}

Histogram RichnessSpectrum::slope_class() const {
  Histogram h;
  if (is_field()) {
    for (const auto& s : by_slope) merge_into(h, s);
  } else {
    merge_into(h, horizontal);
    merge_into(h, oblique);
  }
  return h;
}

Histogram RichnessSpectrum::slope_nonzero() const {
  if (!is_field()) return oblique;
  Histogram h;
  for (std::size_t l = 1; l < by_slope.size(); ++l) merge_into(h, by_slope[l]);
  return h;
}

Histogram RichnessSpectrum::horizontal_class() const {
  if (!is_field()) return horizontal;
  return by_slope.empty() ? Histogram{} : by_slope[0];
}

Histogram RichnessSpectrum::all_classes() const {
  Histogram h = slope_class();
  merge_into(h, vertical);
  return h;
}

namespace {

// Per-worker bucket array for one lambda at a time.
struct SweepScratch {
  std::vector<std::uint32_t> count;
  std::vector<std::uint32_t> touched;
  std::vector<std::uint32_t> mu;

  SweepScratch(std::uint32_t p, std::size_t nb) : count(p, 0), mu(nb) { touched.reserve(1024); }
};

// Buckets mu = b - lambda a over A x B; leaves the touched mu values in
// scratch.touched and their richness in scratch.count. Caller must reset.
void sweep_lambda(std::uint32_t lambda, std::span<const std::uint32_t> as, std::span<const std::uint32_t> bs,
                  const PrimeModulus& p, SweepScratch& s) {
  const auto& k = simd::kernels();
  for (auto a : as) {
    k.sub_mod(bs.data(), bs.size(), p.mul(lambda, a), p.value(), s.mu.data());
    for (auto m : s.mu) {
      if (s.count[m]++ == 0) s.touched.push_back(m);
    }
  }
}

void reset(SweepScratch& s) {
  for (auto m : s.touched) s.count[m] = 0;
  s.touched.clear();
}

void require_grid_cap(const ResidueSet& a, const ResidueSet& b) {
  if (a.size() * b.size() > kMaxGridPoints) {
    throw std::invalid_argument("grid spectrum limited to " + std::to_string(kMaxGridPoints) + " points");
  }
}

using LineMap = std::unordered_map<IntLine, std::uint64_t, IntLineHash>;

// Oblique lines of A x B on the integer grid with their richness.
LineMap grid_oblique_lines(const ResidueSet& a, const ResidueSet& b) {
  require_grid_cap(a, b);
  std::vector<IntPoint> pts;
  pts.reserve(a.size() * b.size());
  for (auto x : a.elements()) {
    for (auto y : b.elements()) pts.push_back({x, y});
  }
  LineMap pairs;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i].x == pts[j].x || pts[i].y == pts[j].y) continue;
      ++pairs[canonical_line(pts[i], pts[j])];
    }
  }
  // c = i (i - 1) / 2 pairs on a line with i points.
  for (auto& [line, c] : pairs) {
    auto i = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(c))) / 2.0);
    while (i * (i - 1) / 2 > c) --i;
    while ((i + 1) * i / 2 <= c) ++i;
    if (i * (i - 1) / 2 != c) throw std::logic_error("pair count is not triangular");
    c = i;
  }
  return pairs;
}

}  // namespace

void for_each_slope_line(const ResidueSet& a, const ResidueSet& b, std::uint32_t lambda_begin,
                         std::uint32_t lambda_end,
                         const std::function<void(std::uint32_t, std::uint32_t, std::uint32_t)>& visit) {
  require_field(a, "slope sweep");
  require_same_ambient(a, b);
  const auto& p = a.modulus();
  lambda_end = std::min(lambda_end, p.value());
  SweepScratch s(p.value(), b.size());
  for (std::uint32_t l = lambda_begin; l < lambda_end; ++l) {
    sweep_lambda(l, a.residues(), b.residues(), p, s);
    std::sort(s.touched.begin(), s.touched.end());
    for (auto m : s.touched) visit(l, m, s.count[m]);
    reset(s);
  }
}

RichnessSpectrum grid_spectrum(const ResidueSet& a, const ResidueSet& b, unsigned workers) {
  require_same_ambient(a, b);
  RichnessSpectrum out;
  out.modulus = a.ambient();
  out.size_a = a.size();
  out.size_b = b.size();
  if (!a.empty() && !b.empty()) out.vertical[b.size()] = a.size();

  if (!a.is_field()) {
    if (!a.empty() && !b.empty()) out.horizontal[a.size()] = b.size();
    for (const auto& [line, i] : grid_oblique_lines(a, b)) ++out.oblique[i];
    return out;
  }

  const auto& p = a.modulus();
  out.by_slope.assign(p.value(), Histogram{});
  if (a.empty() || b.empty()) return out;
  const auto as = a.residues();
  const auto bs = b.residues();
  const unsigned w = resolve_workers(workers, p.value());
  parallel_blocks(p.value(), w, [&](unsigned, std::size_t begin, std::size_t end) {
    SweepScratch s(p.value(), bs.size());
    std::vector<std::uint64_t> freq(as.size() + 1, 0);
    for (std::size_t l = begin; l < end; ++l) {
      sweep_lambda(static_cast<std::uint32_t>(l), as, bs, p, s);
      for (auto m : s.touched) ++freq[s.count[m]];
      reset(s);
      auto& h = out.by_slope[l];
      for (std::size_t i = 1; i < freq.size(); ++i) {
        if (freq[i]) h[i] = freq[i];
        freq[i] = 0;
      }
    }
  });
  return out;
}

RichLineSet rich_lines(const ResidueSet& a, const ResidueSet& b, double tau, RichMode mode) {
  require_same_ambient(a, b);
  if (!std::isfinite(tau)) throw std::invalid_argument("tau must be finite");
  RichLineSet out;
  out.tau = tau;
  out.mode = mode;

  if (mode == RichMode::balanced) {
    require_field(a, "balanced rich lines");
    if (!(tau > 0)) throw std::invalid_argument("balanced rich lines need tau > 0");
    const auto& p = a.modulus();
    const Rational mean(BigInt(a.size() * b.size()), BigInt(p.value()));
    const Rational t(tau);
    for_each_slope_line(a, b, 1, p.value(), [&](std::uint32_t l, std::uint32_t m, std::uint32_t i) {
      if (i < 2) return;
      Rational dev = Rational(BigInt(i)) - mean;
      if (abs(dev) >= t) out.members.push_back({SlopeLine{l, m}, i, dev});
    });
    return out;
  }

  if (!(tau >= 1)) throw std::invalid_argument("raw rich lines need tau >= 1");
  const auto need = static_cast<std::uint64_t>(std::ceil(tau));

  if (a.is_field()) {
    const auto& p = a.modulus();
    for_each_slope_line(a, b, 0, p.value(), [&](std::uint32_t l, std::uint32_t m, std::uint32_t i) {
      if (i >= need) out.members.push_back({SlopeLine{l, m}, i, {}});
    });
    if (b.size() >= need) {
      for (auto c : a.residues()) out.members.push_back({VerticalLine{c}, b.size(), {}});
    }
    return out;
  }

  if (need < 2) throw std::invalid_argument("grid rich lines need tau >= 2 (1-point lines are infinite)");
  auto oblique = grid_oblique_lines(a, b);
  std::vector<RichLine> found;
  for (const auto& [line, i] : oblique) {
    if (i >= need) found.push_back({line, i, {}});
  }
  if (b.size() >= need) {
    for (auto c : a.elements()) found.push_back({IntLine{1, 0, c}, b.size(), {}});
  }
  if (a.size() >= need) {
    for (auto c : b.elements()) found.push_back({IntLine{0, 1, c}, a.size(), {}});
  }
  std::sort(found.begin(), found.end(), [](const RichLine& x, const RichLine& y) {
    const auto& u = std::get<IntLine>(x.line);
    const auto& v = std::get<IntLine>(y.line);
    return std::tie(u.a, u.b, u.c) < std::tie(v.a, v.b, v.c);
  });
  out.members = std::move(found);
  return out;
}

std::vector<AffineElement> affine_points(const RichLineSet& lines) {
  std::vector<AffineElement> out;
  for (const auto& m : lines.members) {
    if (const auto* s = std::get_if<SlopeLine>(&m.line); s && s->lambda != 0) out.push_back({s->lambda, s->mu});
  }
  return out;
}

LineStats line_point_stats(std::span<const AffineElement> points, const PrimeModulus& p) {
  if (points.empty()) throw std::invalid_argument("line_point_stats of an empty set");
  std::vector<AffineElement> pts(points.begin(), points.end());
  for (const auto& q : pts) {
    if (q.a % p.value() == 0) throw std::invalid_argument("point with zero abscissa");
    if (q.b >= p.value() || q.a >= p.value()) throw std::invalid_argument("point coordinates not reduced");
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  LineStats st;
  for (std::size_t i = 0; i < pts.size();) {
    std::size_t j = i;
    while (j < pts.size() && pts[j].a == pts[i].a) ++j;
    st.m = std::max<std::uint64_t>(st.m, j - i);
    i = j;
  }

  const std::uint32_t pv = p.value();
  if (pts.size() > pv) {
    // Dense input: sweep every direction, bucketing points by intercept.
    std::vector<std::uint32_t> count(pv, 0);
    std::uint64_t best = st.m;
    for (std::uint32_t lam = 0; lam < pv; ++lam) {
      std::fill(count.begin(), count.end(), 0);
      for (std::size_t i = 0; i < pts.size();) {
        const std::uint32_t a = pts[i].a;
        const std::uint32_t t = p.mul(lam, a);
        for (; i < pts.size() && pts[i].a == a; ++i) best = std::max<std::uint64_t>(best, ++count[p.sub(pts[i].b, t)]);
      }
    }
    st.big_m = best;
    return st;
  }

  // Slope from P to Q is (Qb - Pb) / (Qa - Pa); the vertical direction is keyed p.
  const bool dense = pv <= (1u << 22);
  std::vector<std::uint32_t> inv;
  std::vector<std::uint32_t> bucket;
  if (dense) {
    inv.assign(pv, 0);
    inv[1] = 1;
    for (std::uint32_t x = 2; x < pv; ++x) {
      inv[x] = p.neg(p.mul(pv / x, inv[pv % x]));
    }
    bucket.assign(pv + 1, 0);
  }
  std::uint64_t best = 0;
  std::vector<std::uint32_t> slopes;
  slopes.reserve(pts.size());
  for (const auto& P : pts) {
    slopes.clear();
    for (const auto& Q : pts) {
      if (Q == P) continue;
      if (Q.a == P.a) {
        slopes.push_back(pv);
      } else {
        const auto dx = p.sub(Q.a, P.a);
        slopes.push_back(p.mul(p.sub(Q.b, P.b), dense ? inv[dx] : p.inv(dx)));
      }
    }
    if (dense) {
      for (auto s : slopes) best = std::max<std::uint64_t>(best, ++bucket[s]);
      for (auto s : slopes) bucket[s] = 0;
    } else {
      std::sort(slopes.begin(), slopes.end());
      for (std::size_t i = 0; i < slopes.size();) {
        std::size_t j = i;
        while (j < slopes.size() && slopes[j] == slopes[i]) ++j;
        best = std::max<std::uint64_t>(best, j - i);
        i = j;
      }
    }
  }
  st.big_m = 1 + best;
  return st;
}

namespace {

std::vector<std::pair<std::string, const Histogram*>> grid_classes(const RichnessSpectrum& s) {
  return {{"horizontal", &s.horizontal}, {"vertical", &s.vertical}, {"oblique", &s.oblique}};
}

}  // namespace

void write_spectrum_csv(std::ostream& out, const RichnessSpectrum& s) {
  out << "class,lambda_or_c,richness,count\n";
  if (s.is_field()) {
    for (std::size_t l = 0; l < s.by_slope.size(); ++l) {
      for (const auto& [i, c] : s.by_slope[l]) out << "slope," << l << ',' << i << ',' << c << '\n';
    }
    for (const auto& [i, c] : s.vertical) out << "vertical,*," << i << ',' << c << '\n';
    return;
  }
  for (const auto& [name, h] : grid_classes(s)) {
    for (const auto& [i, c] : *h) out << name << ",*," << i << ',' << c << '\n';
  }
}

void write_spectrum_json(std::ostream& out, const RichnessSpectrum& s) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  auto put = [&](const std::string& name, const Histogram& h) {
    auto& o = j[name] = nlohmann::ordered_json::object();
    for (const auto& [i, c] : h) o[std::to_string(i)] = c;
  };
  if (s.is_field()) {
    put("slope", s.slope_class());
    put("vertical", s.vertical);
  } else {
    for (const auto& [name, h] : grid_classes(s)) put(name, *h);
  }
  out << j.dump(2) << '\n';
}

}  // namespace inclab
