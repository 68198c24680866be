// inclab: command-line front end.
// Exit codes: 0 success, 1 suite failure, 2 invalid input or config.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "inclab/counts.hpp"
#include "inclab/energy.hpp"
#include "inclab/harness.hpp"
#include "inclab/sets.hpp"
#include "inclab/spectrum.hpp"
#include "json.hpp"

namespace {

using namespace inclab;

struct Opts {
  std::optional<std::uint64_t> p;
  std::string set_a, set_b, set_x, set_y;
  unsigned k = 2;
  unsigned n = 2;
  std::optional<double> tau;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> trials;
  std::string out;
  std::string format = "csv";
  // gen
  std::string kind = "random";
  std::size_t size = 0;
  std::int64_t shift = 0, ratio = 2, range = 0;
  // energy / collinear / incidence
  std::string energy_kind = "additive";
  std::string filter = "all_i_ge_2";
  bool brute = false;
  bool balanced = false;
  // verify
  std::string suite, config;
  bool format_given = false, seed_given = false;
  unsigned workers = 0;
};

// Writes to --out when given, stdout otherwise.
template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  fn(f);
  if (!f) throw std::runtime_error("failed writing " + path);
}

ResidueSet load_a(const Opts& o) {
  if (o.set_a.empty()) throw std::invalid_argument("--set-a is required");
  return read_set_file(o.set_a);
}
ResidueSet load_b(const Opts& o, const ResidueSet& a) { return o.set_b.empty() ? a : read_set_file(o.set_b); }

void check_p(const Opts& o, const ResidueSet& a) {
  if (!o.p) return;
  if (!a.is_field() || a.modulus().value() != *o.p)
    throw std::invalid_argument("--p does not match the modulus of the set files");
}

int cmd_gen(const Opts& o) {
  GeneratorSpec s;
  s.kind = parse_generator_kind(o.kind);
  if (o.p) s.modulus = PrimeModulus(*o.p);
  s.n = o.size;
  s.shift = o.shift;
  s.ratio = o.ratio;
  s.range = o.range;
  s.seed = o.seed;
  const auto set = generate(s);
  with_output(o.out, [&](std::ostream& out) { write_set(out, set); });
  return 0;
}

int cmd_spectrum(const Opts& o) {
  const auto a = load_a(o);
  const auto b = load_b(o, a);
  check_p(o, a);
  const auto s = grid_spectrum(a, b, o.workers);
  with_output(o.out, [&](std::ostream& out) {
    if (o.format == "json")
      write_spectrum_json(out, s);
    else
      write_spectrum_csv(out, s);
  });
  return 0;
}

int cmd_energy(const Opts& o) {
  const auto a = load_a(o);
  const auto b = load_b(o, a);
  check_p(o, a);
  nlohmann::ordered_json j;
  j["kind"] = o.energy_kind;
  j["k"] = o.k;
  if (o.energy_kind == "additive") {
    j["value"] = to_string(additive_energy_k(a, b, o.k));
  } else if (o.energy_kind == "multiplicative") {
    j["value"] = to_string(multiplicative_energy_k(a, b, o.k));
  } else if (o.energy_kind == "shifted") {
    if (a.is_field()) {
      const auto e = shifted_mult_energy_max(a, o.k, o.workers);
      j["value"] = to_string(e.value);
      j["shift"] = std::to_string(e.shift);
    } else {
      if (o.k != 2) throw std::invalid_argument("grid shifted energy supports k = 2 only");
      const auto e = grid_shifted_mult_energy_max(a);
      j["value"] = to_string(e.value);
      j["shift"] = to_string(e.shift);
    }
  } else if (o.energy_kind == "balanced") {
    j["value"] = to_string(balanced_additive_energy(a));
  } else if (o.energy_kind == "balanced_shifted") {
    const auto e = balanced_shifted_mult_energy_max(a, o.workers);
    j["value"] = to_string(e.value);
    j["shift"] = std::to_string(e.shift);
  } else if (o.energy_kind == "alternating") {
    j["value"] = to_string(alternating_energy_T(a, o.k));
  } else {
    throw std::invalid_argument("unknown energy kind '" + o.energy_kind + "'");
  }
  with_output(o.out, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
  return 0;
}

int cmd_collinear(const Opts& o) {
  const auto a = load_a(o);
  const auto b = load_b(o, a);
  check_p(o, a);
  const auto filter = parse_moment_filter(o.filter);
  nlohmann::ordered_json j;
  j["k"] = o.k;
  j["filter"] = to_string(filter);
  j["moment"] = to_string(spectrum_moment(a, b, o.k, filter, o.workers).count);
  if (o.brute) j["tuples_oracle"] = to_string(collinear_tuples_oracle(a, b, o.k));
  if (a.is_field() && o.n >= 2) j["balanced_moment"] = to_string(balanced_moment(a, o.n, o.workers));
  with_output(o.out, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
  return 0;
}

int cmd_incidence(const Opts& o) {
  const auto a = load_a(o);
  const auto b = load_b(o, a);
  check_p(o, a);
  nlohmann::ordered_json j;
  if (!o.set_x.empty() || !o.set_y.empty()) {
    if (o.set_x.empty() || o.set_y.empty()) throw std::invalid_argument("--set-x and --set-y go together");
    const auto q = translation_quadruples(a, b, read_set_file(o.set_x), read_set_file(o.set_y), false, o.workers);
    j["quadruples"] = to_string(q.count);
    j["error"] = to_string(q.error);
  } else {
    if (!o.tau) throw std::invalid_argument("--tau is required without --set-x/--set-y");
    const auto lines = rich_lines(a, b, *o.tau, o.balanced ? RichMode::balanced : RichMode::raw);
    std::vector<LineId> ids;
    for (const auto& m : lines.members) ids.push_back(m.line);
    j["tau"] = *o.tau;
    j["mode"] = o.balanced ? "balanced" : "raw";
    j["lines"] = ids.size();
    j["incidences"] = to_string(incidence_count(a, b, ids));
  }
  with_output(o.out, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
  return 0;
}

int cmd_verify(const Opts& o) {
  if (o.config.empty()) throw std::invalid_argument("--config is required");
  auto cfg = load_config(o.config);
  if (!o.suite.empty()) cfg.suite = o.suite;
  if (o.trials) cfg.trials = *o.trials;
  if (!o.out.empty()) cfg.output = o.out;
  if (o.format_given) cfg.format = o.format;
  if (o.seed_given) cfg.seed = o.seed;
  if (o.workers) cfg.workers = o.workers;

  ExperimentReport rep;
  if (cfg.suite == "identities") {
    VerifyOptions v;
    v.p_max = cfg.p_max;
    v.size_max = cfg.size_max;
    v.trials = cfg.trials;
    v.seed = cfg.seed;
    const std::filesystem::path outp(cfg.output);
    v.dump_dir = (cfg.output.empty() ? std::filesystem::path(".") : outp.parent_path().empty() ? "." : outp.parent_path()) /
                 "counterexamples";
    rep = verify_identities(v);
  } else {
    rep = run_suite(cfg);
  }
  if (cfg.output.empty()) {
    if (cfg.format == "json")
      write_report_json(std::cout, rep);
    else
      write_report_csv(std::cout, rep);
  } else {
    emit_report(rep, cfg.output, cfg.format);
  }
  for (const auto& w : rep.summary.warnings) std::cerr << "warning: " << w << '\n';
  std::cerr << rep.suite << ": " << (rep.summary.pass ? "PASS" : "FAIL") << " (" << rep.summary.passed << " pass, "
            << rep.summary.failed << " fail, " << rep.summary.hypothesis_failed << " hypothesis_failed)\n";
  return rep.summary.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inclab: exact incidence and energy computations"};
  app.require_subcommand(1);
  Opts o;

  auto shared = [&](CLI::App* sc) {
    sc->add_option("--p", o.p, "prime modulus");
    sc->add_option("--set-a", o.set_a, "set file A");
    sc->add_option("--set-b", o.set_b, "set file B (default: A)");
    sc->add_option("--k", o.k, "exponent k");
    sc->add_option("--n", o.n, "moment exponent n");
    sc->add_option("--tau", o.tau, "richness threshold");
    sc->add_option("--seed", o.seed, "master seed");
    sc->add_option("--trials", o.trials, "trial count");
    sc->add_option("--out", o.out, "output path (default: stdout)");
    sc->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sc->add_option("--workers", o.workers, "worker threads (0 = all cores)");
  };

  auto* gen = app.add_subcommand("gen", "generate a set file");
  shared(gen);
  gen->add_option("--kind", o.kind, "random, interval, interval_inverse, geometric");
  gen->add_option("--size", o.size, "number of elements")->required();
  gen->add_option("--shift", o.shift, "interval_inverse shift");
  gen->add_option("--ratio", o.ratio, "geometric ratio");
  gen->add_option("--range", o.range, "grid random range");

  auto* spectrum = app.add_subcommand("spectrum", "richness spectrum of A x B");
  shared(spectrum);

  auto* energy = app.add_subcommand("energy", "energies of A (and B)");
  shared(energy);
  energy->add_option("--kind", o.energy_kind,
                     "additive, multiplicative, shifted, balanced, balanced_shifted, alternating");

  auto* collinear = app.add_subcommand("collinear", "collinear tuple moments");
  shared(collinear);
  collinear->add_option("--filter", o.filter, "all_i_ge_2, slope_only_i_ge_2, slope_nonzero_all_i, tilde");
  collinear->add_flag("--brute", o.brute, "also run the determinant tuple oracle");

  auto* incidence = app.add_subcommand("incidence", "incidences with rich lines or translation quadruples");
  shared(incidence);
  incidence->add_flag("--balanced", o.balanced, "balanced richness |i - |A||B|/p| >= tau");
  incidence->add_option("--set-x", o.set_x, "set file X");
  incidence->add_option("--set-y", o.set_y, "set file Y");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  shared(verify);
  verify->add_option("--suite", o.suite, "suite name (overrides the config)");
  verify->add_option("--config", o.config, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  o.format_given = verify->count("--format") > 0;
  o.seed_given = verify->count("--seed") > 0;

  try {
    if (*gen) return cmd_gen(o);
    if (*spectrum) return cmd_spectrum(o);
    if (*energy) return cmd_energy(o);
    if (*collinear) return cmd_collinear(o);
    if (*incidence) return cmd_incidence(o);
    if (*verify) return cmd_verify(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
