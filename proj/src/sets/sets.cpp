#include "inclab/sets.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "inclab/rng.hpp"

namespace inclab {

ResidueSet ResidueSet::in_field(const PrimeModulus& p, std::span<const std::int64_t> elements) {
  ResidueSet s;
  s.modulus_ = p;
  s.elements_.reserve(elements.size());
  for (auto x : elements) s.elements_.push_back(p.reduce(x));
  s.finalize();
  return s;
}

ResidueSet ResidueSet::on_grid(std::span<const std::int64_t> elements) {
  ResidueSet s;
  for (auto x : elements) {
    if (x > kMaxGridElement || x < -kMaxGridElement) {
      throw std::out_of_range("grid element " + std::to_string(x) + " exceeds 2^31 - 1 in magnitude");
    }
  }
  s.elements_.assign(elements.begin(), elements.end());
  s.finalize();
  return s;
}

void ResidueSet::finalize() {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  if (modulus_) {
    residues_.assign(elements_.begin(), elements_.end());
    indicator_.assign(modulus_->value(), 0);
    for (auto r : residues_) indicator_[r] = 1;
  }
}

const PrimeModulus& ResidueSet::modulus() const {
  if (!modulus_) throw std::logic_error("grid set has no modulus");
  return *modulus_;
}

std::span<const std::uint32_t> ResidueSet::residues() const {
  if (!modulus_) throw std::logic_error("grid set has no residue view");
  return residues_;
}

std::span<const std::uint8_t> ResidueSet::indicator() const {
  if (!modulus_) throw std::logic_error("grid set has no indicator");
  return indicator_;
}

bool ResidueSet::contains(std::int64_t x) const {
  if (modulus_) return indicator_[modulus_->reduce(x)] != 0;
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

ResidueSet ResidueSet::shifted(std::int64_t s) const {
  std::vector<std::int64_t> out;
  out.reserve(size());
  if (modulus_) {
    const auto shift = modulus_->reduce(s);
    for (auto r : residues_) out.push_back(modulus_->sub(r, shift));
    return in_field(*modulus_, out);
  }
  for (auto x : elements_) out.push_back(x - s);
  return on_grid(out);
}

ResidueSet ResidueSet::dilated(std::int64_t lambda) const {
  std::vector<std::int64_t> out;
  out.reserve(size());
  if (modulus_) {
    const auto l = modulus_->reduce(lambda);
    for (auto r : residues_) out.push_back(modulus_->mul(r, l));
    return in_field(*modulus_, out);
  }
  for (auto x : elements_) {
    i128 v = static_cast<i128>(x) * lambda;
    if (v > kMaxGridElement || v < -kMaxGridElement) throw std::out_of_range("dilation leaves the grid bound");
    out.push_back(static_cast<std::int64_t>(v));
  }
  return on_grid(out);
}

ResidueSet ResidueSet::without_zero() const {
  ResidueSet s = *this;
  auto it = std::lower_bound(s.elements_.begin(), s.elements_.end(), 0);
  if (it != s.elements_.end() && *it == 0) {
    s.elements_.erase(it);
    s.residues_.clear();
    s.indicator_.clear();
    s.finalize();
  }
  return s;
}

void require_same_ambient(const ResidueSet& a, const ResidueSet& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("sets live in different ambients (modulus mismatch)");
}

void require_field(const ResidueSet& a, const char* op) {
  if (!a.is_field()) throw std::invalid_argument(std::string(op) + " requires a prime-field set");
}

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::random: return "random";
    case GeneratorKind::interval: return "interval";
    case GeneratorKind::interval_inverse: return "interval_inverse";
    case GeneratorKind::geometric: return "geometric";
    case GeneratorKind::explicit_list: return "explicit";
  }
  return "unknown";
}

GeneratorKind parse_generator_kind(const std::string& s) {
  for (auto k : {GeneratorKind::random, GeneratorKind::interval, GeneratorKind::interval_inverse,
                 GeneratorKind::geometric, GeneratorKind::explicit_list}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown generator kind '" + s + "'");
}

namespace {

// Floyd's algorithm: a uniform n-subset of [0, range).
std::vector<std::int64_t> random_subset(std::uint64_t range, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(n * 2);
  for (std::uint64_t j = range - n; j < range; ++j) {
    std::uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::int64_t> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ResidueSet generate(const GeneratorSpec& spec) {
  const auto& p = spec.modulus;
  const std::size_t n = spec.n;
  switch (spec.kind) {
    case GeneratorKind::random: {
      if (!spec.seed) throw std::invalid_argument("random generator requires a seed");
      if (p) {
        if (n > p->value()) throw std::invalid_argument("random: n exceeds p");
        return ResidueSet::in_field(*p, random_subset(p->value(), n, *spec.seed));
      }
      if (spec.range <= 0) throw std::invalid_argument("grid random generator requires range > 0");
      if (spec.range > kMaxGridElement + 1) throw std::invalid_argument("grid random range too large");
      if (n > static_cast<std::uint64_t>(spec.range)) throw std::invalid_argument("random: n exceeds range");
      return ResidueSet::on_grid(random_subset(static_cast<std::uint64_t>(spec.range), n, *spec.seed));
    }
    case GeneratorKind::interval: {
      if (p && n > p->value()) throw std::invalid_argument("interval: n exceeds p");
      if (!p && static_cast<std::int64_t>(n) > kMaxGridElement) throw std::invalid_argument("interval: n too large");
      std::vector<std::int64_t> e(n);
      for (std::size_t i = 0; i < n; ++i) e[i] = static_cast<std::int64_t>(i + 1);
      return p ? ResidueSet::in_field(*p, e) : ResidueSet::on_grid(e);
    }
    case GeneratorKind::interval_inverse: {
      if (!p) throw std::invalid_argument("interval_inverse requires a prime modulus");
      if (n >= p->value()) throw std::invalid_argument("interval_inverse: n must be below p");
      const auto s = p->reduce(spec.shift);
      std::vector<std::int64_t> e(n);
      for (std::size_t i = 0; i < n; ++i) e[i] = p->add(p->inv(static_cast<std::uint32_t>(i + 1)), s);
      return ResidueSet::in_field(*p, e);
    }
    case GeneratorKind::geometric: {
      std::vector<std::int64_t> e(n);
      if (p) {
        const auto g = p->reduce(spec.ratio);
        if (g == 0) throw std::invalid_argument("geometric: ratio must be a nonzero residue");
        if (multiplicative_order(g, *p) < n) {
          throw std::invalid_argument("geometric: ratio has multiplicative order below n");
        }
        std::uint32_t x = 1;
        for (std::size_t i = 0; i < n; ++i, x = p->mul(x, g)) e[i] = x;
        return ResidueSet::in_field(*p, e);
      }
      if (n >= 2 && (spec.ratio == 0 || spec.ratio == 1 || spec.ratio == -1)) {
        throw std::invalid_argument("geometric: ratio repeats elements");
      }
      i128 x = 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (x > kMaxGridElement || x < -kMaxGridElement) throw std::invalid_argument("geometric: exceeds grid bound");
        e[i] = static_cast<std::int64_t>(x);
        x *= spec.ratio;
      }
      return ResidueSet::on_grid(e);
    }
    case GeneratorKind::explicit_list:
      return p ? ResidueSet::in_field(*p, spec.elements) : ResidueSet::on_grid(spec.elements);
  }
  throw std::logic_error("unreachable generator kind");
}

ResidueSet sumset(const ResidueSet& a, const ResidueSet& b, SetOp op) {
  require_same_ambient(a, b);
  std::vector<std::int64_t> out;
  if (a.is_field()) {
    const auto& p = a.modulus();
    std::vector<std::uint8_t> hit(p.value(), 0);
    for (auto x : a.residues()) {
      for (auto y : b.residues()) {
        std::uint32_t z = op == SetOp::add ? p.add(x, y) : op == SetOp::sub ? p.sub(x, y) : p.mul(x, y);
        hit[z] = 1;
      }
    }
    for (std::uint32_t z = 0; z < p.value(); ++z) {
      if (hit[z]) out.push_back(z);
    }
    return ResidueSet::in_field(p, out);
  }
  out.reserve(a.size() * b.size());
  for (auto x : a.elements()) {
    for (auto y : b.elements()) {
      i128 z = op == SetOp::add ? i128{x} + y : op == SetOp::sub ? i128{x} - y : i128{x} * y;
      if (z > kMaxGridElement || z < -kMaxGridElement) throw std::out_of_range("sumset leaves the grid bound");
      out.push_back(static_cast<std::int64_t>(z));
    }
  }
  return ResidueSet::on_grid(out);
}

Rational doubling_ratio(const ResidueSet& a) {
  if (a.empty()) throw std::invalid_argument("doubling_ratio of an empty set");
  return Rational(BigInt(sumset(a, a, SetOp::add).size()), BigInt(a.size()));
}

ResidueSet iterated_sumset(const ResidueSet& a, unsigned n, unsigned m) {
  if (n == 0 || m == 0) throw std::invalid_argument("iterated_sumset needs n, m >= 1");
  ResidueSet acc = a;
  for (unsigned i = 1; i < n; ++i) acc = sumset(acc, a, SetOp::add);
  for (unsigned i = 0; i < m; ++i) acc = sumset(acc, a, SetOp::sub);
  return acc;
}

void write_set(std::ostream& out, const ResidueSet& set) {
  if (set.is_field()) {
    out << "p " << set.modulus().value() << '\n';
  } else {
    out << "grid\n";
  }
  for (auto x : set.elements()) out << x << '\n';
}

ResidueSet read_set(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::invalid_argument("set file is empty");
  if (!header.empty() && header.back() == '\r') header.pop_back();
  std::optional<PrimeModulus> p;
  if (header.rfind("p ", 0) == 0) {
    std::istringstream hs(header.substr(2));
    std::uint64_t value = 0;
    if (!(hs >> value)) throw std::invalid_argument("bad set header '" + header + "'");
    p.emplace(value);
  } else if (header != "grid") {
    throw std::invalid_argument("set header must be 'p <prime>' or 'grid'");
  }
  std::vector<std::int64_t> elements;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(line, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != line.size()) {
      throw std::invalid_argument("set file line " + std::to_string(line_no) + ": not an integer");
    }
    elements.push_back(v);
  }
  return p ? ResidueSet::in_field(*p, elements) : ResidueSet::on_grid(elements);
}

void write_set_file(const std::string& path, const ResidueSet& set) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_set(out, set);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

ResidueSet read_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open set file '" + path + "'");
  return read_set(in);
}

}  // namespace inclab
