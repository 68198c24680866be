#include <filesystem>
#include <stdexcept>

#include "inclab/harness.hpp"
#include "inclab/oracle.hpp"
#include "inclab/rng.hpp"

namespace inclab {

IdentityHooks production_hooks() {
  IdentityHooks h;
  h.spectrum = [](const ResidueSet& a, const ResidueSet& b) { return grid_spectrum(a, b, 1); };
  h.collinear = [](const ResidueSet& a, const ResidueSet& b, unsigned k) { return collinear_tuples_oracle(a, b, k); };
  h.additive_energy = [](const ResidueSet& a, const ResidueSet& b, unsigned k) {
    return additive_energy_k(a, b, k);
  };
  h.mult_energy = [](const ResidueSet& a, const ResidueSet& b, unsigned k) {
    return multiplicative_energy_k(a, b, k);
  };
  h.alternating = [](const ResidueSet& a, unsigned k) { return alternating_energy_T(a, k); };
  return h;
}

namespace {

struct Instance {
  PrimeModulus p;
  ResidueSet a, b, x, y;  // field sets
  ResidueSet ga, gb;      // grid sets
};

ResidueSet random_set(Rng& rng, std::optional<PrimeModulus> p, std::uint64_t range, std::uint64_t size_max) {
  const std::uint64_t n = 1 + rng.below(std::min(size_max, range));
  GeneratorSpec s;
  s.kind = GeneratorKind::random;
  s.modulus = p;
  s.n = n;
  s.range = static_cast<std::int64_t>(range);
  s.seed = rng.next();
  return generate(s);
}

Instance make_instance(const std::vector<std::uint64_t>& primes, std::uint64_t size_max, std::uint64_t seed) {
  Rng rng(seed);
  const PrimeModulus p(primes[rng.below(primes.size())]);
  auto a = random_set(rng, p, p.value(), size_max);
  auto b = random_set(rng, p, p.value(), size_max);
  auto x = random_set(rng, p, p.value(), size_max);
  auto y = random_set(rng, p, p.value(), size_max);
  const std::uint64_t range = 3 * size_max;
  auto ga = random_set(rng, std::nullopt, range, size_max);
  auto gb = random_set(rng, std::nullopt, range, size_max);
  return {p, a, b, x, y, ga, gb};
}

BigInt safe_mult_energy(const IdentityHooks& h, const ResidueSet& a, const ResidueSet& b, unsigned k) {
  if (a.without_zero().empty() || b.without_zero().empty()) return 0;
  return h.mult_energy(a, b, k);
}

class Checker {
 public:
  Checker(ExperimentReport& rep, const VerifyOptions& opt, std::uint64_t trial, const Instance& inst)
      : rep_(rep), opt_(opt), trial_(trial), inst_(inst) {}

  // statistic: production side, main: oracle side.
  void record(const std::string& check, const ResidueSet& a, const ResidueSet& b, const Rational& stat,
              const Rational& main, bool ok, std::map<std::string, std::string> notes = {}) {
    ReportRow r;
    r.suite = "identities/" + check;
    r.p = a.is_field() ? a.modulus().value() : 0;
    r.size_a = a.size();
    r.size_b = b.size();
    r.trial = trial_;
    r.statistic = to_string(stat);
    r.main_term = to_string(main);
    r.error = to_string(stat - main);
    r.bound = "0";
    r.ratio = ok ? "0" : "1";
    r.flag = ok ? "pass" : "fail";
    r.notes = std::move(notes);
    if (!ok && !opt_.dump_dir.empty()) {
      std::filesystem::create_directories(opt_.dump_dir);
      const std::string stem = opt_.dump_dir + "/" + check + "_trial" + std::to_string(trial_);
      write_set_file(stem + "_a.set", a);
      write_set_file(stem + "_b.set", b);
      r.notes["counterexample"] = stem + "_{a,b}.set";
    }
    rep_.rows.push_back(std::move(r));
  }

 private:
  ExperimentReport& rep_;
  const VerifyOptions& opt_;
  std::uint64_t trial_;
  const Instance& inst_;
};

BigInt choose2(std::uint64_t i) { return BigInt(i) * (i - (i > 0)) / 2; }

void run_checks(Checker& ck, const Instance& in, const IdentityHooks& h) {
  const auto& p = in.p;
  const auto& a = in.a;
  const auto& b = in.b;
  const BigInt pb(p.value());
  const std::uint64_t n_pts = a.size() * b.size();

  const auto spec = h.spectrum(a, b);
  {
    const auto ref = oracle::all_lines_spectrum(a, b);
    ck.record("spectrum_field", a, b, Rational(power_sum(spec.all_classes(), 2)),
              Rational(power_sum(ref.all_classes(), 2)), spec == ref);
  }
  {
    const auto s = h.spectrum(in.ga, in.gb);
    const auto ref = oracle::all_lines_spectrum(in.ga, in.gb);
    ck.record("spectrum_grid", in.ga, in.gb, Rational(power_sum(s.all_classes(), 2)),
              Rational(power_sum(ref.all_classes(), 2)), s == ref);
  }
  {
    BigInt pairs = 0;
    for (const auto& [i, c] : spec.all_classes()) pairs += choose2(i) * c;
    const BigInt want = choose2(n_pts);
    ck.record("pair_identity", a, b, Rational(pairs), Rational(want), pairs == want);
  }
  {
    std::uint64_t bad = 0;
    auto mass = [](const Histogram& hh) {
      std::uint64_t m = 0;
      for (const auto& [i, c] : hh) m += i * c;
      return m;
    };
    for (const auto& hh : spec.by_slope) bad += mass(hh) != n_pts;
    bad += mass(spec.vertical) != n_pts;
    bad += spec.by_slope.size() != p.value();
    ck.record("slope_mass", a, b, Rational(bad), Rational(0), bad == 0);
  }
  for (unsigned k : {3u, 4u, 5u}) {
    BigInt want = n_pts;
    for (const auto& [i, c] : spec.all_classes()) {
      if (i >= 2) want += (big_pow(BigInt(i), k) - i) * c;
    }
    const BigInt got = h.collinear(a, b, k);
    ck.record("bridge_k" + std::to_string(k), a, b, Rational(got), Rational(want), got == want);
  }
  for (unsigned k : {2u, 3u, 4u}) {
    // sum_{lambda != 0} E_k(B, lambda A) = sum_{lambda != 0, mu} i^k = sum_mu E*_k(B - mu, A),
    // the last with a correction for the pair a = 0, b = mu when 0 is in A.
    BigInt lhs = 0;
    for (std::uint32_t lam = 1; lam < p.value(); ++lam) lhs += h.additive_energy(b, a.dilated(lam), k);
    const BigInt mid = power_sum(spec.slope_nonzero(), k);
    BigInt rhs = 0;
    const bool zero_in_a = a.contains(0);
    for (std::uint32_t mu = 0; mu < p.value(); ++mu) {
      const auto bm = b.shifted(mu);
      if (!zero_in_a || !b.contains(mu)) {
        rhs += safe_mult_energy(h, bm, a, k);
        continue;
      }
      std::vector<std::uint64_t> r(p.value(), 0);
      if (!bm.without_zero().empty() && !a.without_zero().empty()) {
        const auto counts = ratio_counts(bm, a);
        for (std::uint32_t lam = 1; lam < p.value(); ++lam) r[lam] = counts[lam];
      }
      for (std::uint32_t lam = 1; lam < p.value(); ++lam) rhs += big_pow(BigInt(r[lam] + 1), k);
    }
    const bool ok = lhs == mid && mid == rhs;
    ck.record("tck_k" + std::to_string(k), a, b, Rational(mid), Rational(lhs), ok,
              {{"dilate_sum", to_string(lhs)}, {"shift_sum", to_string(rhs)}, {"zero_in_A", zero_in_a ? "yes" : "no"}});
  }
  {
    std::vector<std::uint32_t> table(std::size_t{p.value()} * p.value(), 0);
    for_each_slope_line(a, a, 1, p.value(), [&](std::uint32_t lam, std::uint32_t mu, std::uint32_t i) {
      table[std::size_t{lam} * p.value() + mu] = i;
    });
    const Rational mean(BigInt(a.size()) * a.size(), pb);
    std::uint64_t bad = 0;
    for (std::uint32_t lam = 1; lam < p.value(); ++lam) {
      for (std::uint32_t mu = 0; mu < p.value(); ++mu) {
        const Rational want = Rational(table[std::size_t{lam} * p.value() + mu]) - mean;
        bad += oracle::balanced_line_value(a, lam, mu) != want;
      }
    }
    ck.record("balanced_line", a, a, Rational(bad), Rational(0), bad == 0);
  }
  {
    const Rational got = balanced_additive_energy(a);
    const Rational want = oracle::balanced_energy_quadruples(a);
    ck.record("balanced_energy", a, a, got, want, got == want);
  }
  {
    const BigInt t2 = h.alternating(a, 2);
    const BigInt e = h.additive_energy(a, a, 2);
    ck.record("t2_equals_energy", a, a, Rational(t2), Rational(e), t2 == e);
  }
  {
    // T_4 brute force is |A|^8; run it on at most four elements of A.
    const auto el = a.elements();
    const std::vector<std::int64_t> head(el.begin(), el.begin() + std::min<std::size_t>(el.size(), 4));
    const auto a4 = ResidueSet::in_field(p, head);
    for (unsigned k : {2u, 4u}) {
      const auto& s = k == 2 ? a : a4;
      const BigInt got = h.alternating(s, k);
      const BigInt want = oracle::alternating_energy_T(s, k);
      ck.record("tk_k" + std::to_string(k), s, s, Rational(got), Rational(want), got == want);
    }
  }
  for (unsigned k : {2u, 3u}) {
    const BigInt got = h.additive_energy(a, b, k);
    const BigInt want = oracle::additive_energy_k(a, b, k);
    ck.record("additive_energy_k" + std::to_string(k), a, b, Rational(got), Rational(want), got == want);
  }
  {
    const BigInt got = safe_mult_energy(h, a, b, 2);
    const BigInt want = oracle::mult_energy_quadruples(a, b);
    ck.record("mult_energy", a, b, Rational(got), Rational(want), got == want);
  }
  {
    const auto t = h.spectrum(b, a);
    const BigInt x = power_sum(spec.all_classes(), 3, 2);
    const BigInt y = power_sum(t.all_classes(), 3, 2);
    ck.record("transpose", a, b, Rational(x), Rational(y), x == y);
  }
  {
    const auto got = translation_quadruples(a, b, in.x, in.y, false, 1);
    const BigInt want = oracle::translation_quadruples(a, b, in.x, in.y);
    ck.record("translation", a, b, Rational(got.count), Rational(want), got.count == want);
  }
}

}  // namespace

ExperimentReport verify_identities(const VerifyOptions& opt, const IdentityHooks& hooks) {
  if (opt.p_max > 31) throw std::invalid_argument("verify: p_max must be <= 31");
  if (opt.size_max > 8) throw std::invalid_argument("verify: size_max must be <= 8");
  if (opt.size_max < 1) throw std::invalid_argument("verify: size_max must be >= 1");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t q = 5; q <= opt.p_max; ++q) {
    if (is_prime(q)) primes.push_back(q);
  }
  if (primes.empty()) throw std::invalid_argument("verify: p_max must be >= 5");
  ExperimentReport rep;
  rep.suite = "identities";
  if (opt.trials == 0) rep.summary.warnings.push_back("trials = 0: no identity was exercised (vacuous pass)");
  for (std::uint64_t t = 0; t < opt.trials; ++t) {
    const auto inst = make_instance(primes, opt.size_max, substream_seed(opt.seed, 0x1de, t));
    Checker ck(rep, opt, t, inst);
    run_checks(ck, inst, hooks);
  }
  finalize_report(rep, false, {});
  return rep;
}

}  // namespace inclab
