#pragma once

// Experiment runner: configs, suites, identity verification and reports.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "inclab/counts.hpp"
#include "inclab/energy.hpp"
#include "inclab/sets.hpp"
#include "inclab/spectrum.hpp"

namespace inclab {

struct GeneratorConfig {
  GeneratorKind kind = GeneratorKind::random;
  std::int64_t shift = 0;
  std::int64_t ratio = 0;  // geometric; 0 picks an element of order n
  std::int64_t range = 0;  // grid random
  friend bool operator==(const GeneratorConfig&, const GeneratorConfig&) = default;
};

struct ExperimentConfig {
  std::string suite;
  std::vector<std::uint64_t> primes;
  std::optional<GeneratorConfig> generator;  // absent: suite default
  std::vector<std::uint64_t> sizes;
  std::vector<double> size_exponents;  // |A| = ceil(p^e), used when sizes is empty
  std::vector<std::uint64_t> sizes_b;  // paired with the A schedule; empty means |B| = |A|
  unsigned k = 2;
  std::vector<unsigned> n;
  std::vector<double> tau;
  double delta = 0.05;
  double epsilon = 0.05;
  double c = 0.0;
  double M = 1.0;
  double constant = 100.0;
  std::uint64_t seed = 1;
  std::uint64_t trials = 1;
  std::uint64_t pairs = 100;
  bool trend = false;
  std::uint64_t p_max = 31;
  std::uint64_t size_max = 8;
  std::string output;
  std::string format = "csv";
  unsigned workers = 0;
};

/// Strict: unknown keys and wrong types raise std::invalid_argument.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

struct ReportRow {
  std::string suite;
  std::uint64_t p = 0;  // 0 on the integer grid
  std::uint64_t size_a = 0;
  std::uint64_t size_b = 0;
  std::uint64_t trial = 0;
  std::string statistic;
  std::string main_term;
  std::string error;
  std::string bound;
  std::string ratio;
  std::string flag;  // pass | fail | hypothesis_failed
  std::map<std::string, std::string> notes;
  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct ReportSummary {
  std::string max_ratio = "nan";
  std::string trend_slope = "nan";
  bool trend_ok = true;
  bool pass = true;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::uint64_t hypothesis_failed = 0;
  std::vector<std::string> warnings;
  friend bool operator==(const ReportSummary&, const ReportSummary&) = default;
};

struct ExperimentReport {
  std::string suite;
  std::vector<ReportRow> rows;
  ReportSummary summary;
  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

inline const std::vector<std::string> kReportColumns = {"suite", "p",     "size_a", "size_b", "trial", "statistic",
                                                        "main_term", "error", "bound", "ratio", "flag"};

/// Stable sort by (p, size_a, size_b, trial), then recompute the summary.
/// trend_labels: row suites whose per-size maximum ratio must not increase.
void finalize_report(ExperimentReport& r, bool trend, const std::vector<std::string>& trend_labels);

std::vector<std::string> suite_names();

/// std::invalid_argument for unknown suites, bad parameters or cap violations.
ExperimentReport run_suite(const ExperimentConfig& config);

/// Replaceable computations so tests can inject faults.
struct IdentityHooks {
  std::function<RichnessSpectrum(const ResidueSet&, const ResidueSet&)> spectrum;
  std::function<BigInt(const ResidueSet&, const ResidueSet&, unsigned)> collinear;
  std::function<EnergyValue(const ResidueSet&, const ResidueSet&, unsigned)> additive_energy;
  std::function<EnergyValue(const ResidueSet&, const ResidueSet&, unsigned)> mult_energy;
  std::function<EnergyValue(const ResidueSet&, unsigned)> alternating;
};
IdentityHooks production_hooks();

struct VerifyOptions {
  std::uint64_t p_max = 31;
  std::uint64_t size_max = 8;
  std::uint64_t trials = 200;
  std::uint64_t seed = 1;
  std::string dump_dir;  // counterexample set files; empty disables dumping
};

/// Every exact identity on random instances. A mismatch fails its row and
/// writes the instance as <dump_dir>/<check>_trial<t>_{a,b}.set.
/// std::invalid_argument when p_max > 31 or size_max > 8.
ExperimentReport verify_identities(const VerifyOptions& opt, const IdentityHooks& hooks = production_hooks());

void write_report_csv(std::ostream& out, const ExperimentReport& r);
void write_report_json(std::ostream& out, const ExperimentReport& r);
/// std::runtime_error on I/O failure, std::invalid_argument on a bad format.
void emit_report(const ExperimentReport& r, const std::string& path, const std::string& format);

/// CSV carries rows only; the summary is recomputed without a trend rule.
ExperimentReport parse_report_csv(std::istream& in);
ExperimentReport parse_report_json(std::istream& in);

}  // namespace inclab
