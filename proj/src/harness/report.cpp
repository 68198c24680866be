#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "inclab/harness.hpp"
#include "json.hpp"

namespace inclab {

namespace {

double parse_ratio(const std::string& s) {
  if (s.empty()) return std::nan("");
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    return std::nan("");
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::uint64_t to_u64(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("report: bad ") + what + " '" + s + "'");
  }
}

// Least-squares slope of ln(ratio) against ln(size).
double log_slope(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) return std::nan("");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(pts.size());
  const double den = n * sxx - sx * sx;
  if (den == 0) return std::nan("");
  return (n * sxy - sx * sy) / den;
}

}  // namespace

void finalize_report(ExperimentReport& r, bool trend, const std::vector<std::string>& trend_labels) {
  std::stable_sort(r.rows.begin(), r.rows.end(), [](const ReportRow& x, const ReportRow& y) {
    return std::tie(x.p, x.size_a, x.size_b, x.trial) < std::tie(y.p, y.size_a, y.size_b, y.trial);
  });
  ReportSummary s;
  s.warnings = r.summary.warnings;

  // Trend groups: (label, p) -> size -> max ratio.
  std::vector<std::string> labels = trend_labels;
  if (labels.empty()) labels.push_back(r.suite);
  std::map<std::pair<std::string, std::uint64_t>, std::map<std::uint64_t, double>> groups;
  for (const auto& row : r.rows) {
    if (std::find(labels.begin(), labels.end(), row.suite) == labels.end()) continue;
    if (row.flag == "hypothesis_failed") continue;
    const double v = parse_ratio(row.ratio);
    if (std::isnan(v)) continue;
    auto& m = groups[{row.suite, row.p}];
    auto it = m.find(row.size_a);
    if (it == m.end())
      m[row.size_a] = v;
    else
      it->second = std::max(it->second, v);
  }
  double worst_slope = std::nan("");
  for (const auto& [key, by_size] : groups) {
    std::vector<std::pair<double, double>> pts;
    double prev = std::nan("");
    for (const auto& [size, v] : by_size) {
      if (v > 0 && size > 1) pts.emplace_back(static_cast<double>(size), v);
      if (trend && !std::isnan(prev) && v > prev) {
        s.trend_ok = false;
        for (auto& row : r.rows) {
          if (row.suite == key.first && row.p == key.second && row.size_a == size && row.flag == "pass")
            row.flag = "fail";
        }
      }
      prev = v;
    }
    const double sl = log_slope(pts);
    if (!std::isnan(sl) && (std::isnan(worst_slope) || sl > worst_slope)) worst_slope = sl;
  }
  s.trend_slope = std::isnan(worst_slope) ? "nan" : decimal(worst_slope);

  double max_ratio = std::nan("");
  for (const auto& row : r.rows) {
    if (row.flag == "pass")
      ++s.passed;
    else if (row.flag == "fail")
      ++s.failed;
    else if (row.flag == "hypothesis_failed")
      ++s.hypothesis_failed;
    else
      throw std::logic_error("report row with unknown flag '" + row.flag + "'");
    const double v = parse_ratio(row.ratio);
    if (!std::isnan(v) && (std::isnan(max_ratio) || v > max_ratio)) max_ratio = v;
  }
  s.max_ratio = std::isnan(max_ratio) ? "nan" : decimal(max_ratio);
  s.pass = s.failed == 0 && (!trend || s.trend_ok);
  r.summary = std::move(s);
}

void write_report_csv(std::ostream& out, const ExperimentReport& r) {
  for (std::size_t i = 0; i < kReportColumns.size(); ++i) out << (i ? "," : "") << kReportColumns[i];
  out << '\n';
  for (const auto& row : r.rows) {
    out << csv_field(row.suite) << ',' << row.p << ',' << row.size_a << ',' << row.size_b << ',' << row.trial << ','
        << csv_field(row.statistic) << ',' << csv_field(row.main_term) << ',' << csv_field(row.error) << ','
        << csv_field(row.bound) << ',' << csv_field(row.ratio) << ',' << row.flag << '\n';
  }
}

void write_report_json(std::ostream& out, const ExperimentReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json e;
    e["suite"] = row.suite;
    e["p"] = std::to_string(row.p);
    e["size_a"] = std::to_string(row.size_a);
    e["size_b"] = std::to_string(row.size_b);
    e["trial"] = std::to_string(row.trial);
    e["statistic"] = row.statistic;
    e["main_term"] = row.main_term;
    e["error"] = row.error;
    e["bound"] = row.bound;
    e["ratio"] = row.ratio;
    e["flag"] = row.flag;
    e["notes"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : row.notes) e["notes"][k] = v;
    j["rows"].push_back(std::move(e));
  }
  const auto& s = r.summary;
  nlohmann::ordered_json sj;
  sj["max_ratio"] = s.max_ratio;
  sj["trend_slope"] = s.trend_slope;
  sj["trend_ok"] = s.trend_ok;
  sj["pass"] = s.pass;
  sj["passed"] = std::to_string(s.passed);
  sj["failed"] = std::to_string(s.failed);
  sj["hypothesis_failed"] = std::to_string(s.hypothesis_failed);
  sj["warnings"] = s.warnings;
  j["summary"] = std::move(sj);
  out << j.dump(2) << '\n';
}

void emit_report(const ExperimentReport& r, const std::string& path, const std::string& format) {
  if (format != "csv" && format != "json") throw std::invalid_argument("report format must be csv or json");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open report file " + path);
  if (format == "csv")
    write_report_csv(out, r);
  else
    write_report_json(out, r);
  out.flush();
  if (!out) throw std::runtime_error("failed writing report file " + path);
}

ExperimentReport parse_report_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("report: empty CSV");
  if (split_csv_line(line) != kReportColumns) throw std::invalid_argument("report: unexpected CSV header");
  ExperimentReport r;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != kReportColumns.size()) throw std::invalid_argument("report: wrong column count");
    ReportRow row;
    row.suite = f[0];
    row.p = to_u64(f[1], "p");
    row.size_a = to_u64(f[2], "size_a");
    row.size_b = to_u64(f[3], "size_b");
    row.trial = to_u64(f[4], "trial");
    row.statistic = f[5];
    row.main_term = f[6];
    row.error = f[7];
    row.bound = f[8];
    row.ratio = f[9];
    row.flag = f[10];
    r.rows.push_back(std::move(row));
  }
  if (!r.rows.empty()) r.suite = r.rows.front().suite.substr(0, r.rows.front().suite.find('/'));
  finalize_report(r, false, {});
  return r;
}

ExperimentReport parse_report_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("report: malformed JSON: ") + e.what());
  }
  try {
    ExperimentReport r;
    r.suite = j.at("suite").get<std::string>();
    for (const auto& e : j.at("rows")) {
      ReportRow row;
      row.suite = e.at("suite").get<std::string>();
      row.p = to_u64(e.at("p").get<std::string>(), "p");
      row.size_a = to_u64(e.at("size_a").get<std::string>(), "size_a");
      row.size_b = to_u64(e.at("size_b").get<std::string>(), "size_b");
      row.trial = to_u64(e.at("trial").get<std::string>(), "trial");
      row.statistic = e.at("statistic").get<std::string>();
      row.main_term = e.at("main_term").get<std::string>();
      row.error = e.at("error").get<std::string>();
      row.bound = e.at("bound").get<std::string>();
      row.ratio = e.at("ratio").get<std::string>();
      row.flag = e.at("flag").get<std::string>();
      for (const auto& [k, v] : e.at("notes").items()) row.notes[k] = v.get<std::string>();
      r.rows.push_back(std::move(row));
    }
    const auto& s = j.at("summary");
    r.summary.max_ratio = s.at("max_ratio").get<std::string>();
    r.summary.trend_slope = s.at("trend_slope").get<std::string>();
    r.summary.trend_ok = s.at("trend_ok").get<bool>();
    r.summary.pass = s.at("pass").get<bool>();
    r.summary.passed = to_u64(s.at("passed").get<std::string>(), "passed");
    r.summary.failed = to_u64(s.at("failed").get<std::string>(), "failed");
    r.summary.hypothesis_failed = to_u64(s.at("hypothesis_failed").get<std::string>(), "hypothesis_failed");
    r.summary.warnings = s.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("report: bad JSON structure: ") + e.what());
  }
}

}  // namespace inclab
