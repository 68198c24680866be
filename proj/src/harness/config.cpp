#include <fstream>
#include <sstream>
#include <stdexcept>

#include "inclab/harness.hpp"
#include "json.hpp"

namespace inclab {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("config: " + what); }

template <class T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    bad("field '" + key + "' has the wrong type");
  }
}

std::uint64_t get_u64(const json& j, const std::string& key) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    bad("field '" + key + "' must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

double get_num(const json& j, const std::string& key) {
  if (!j.is_number()) bad("field '" + key + "' must be a number");
  return j.get<double>();
}

// A scalar is accepted wherever a list is expected.
template <class T, class F>
std::vector<T> get_list(const json& j, const std::string& key, F one) {
  std::vector<T> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(one(e, key));
  } else {
    out.push_back(one(j, key));
  }
  return out;
}

GeneratorConfig parse_generator(const json& j) {
  if (!j.is_object()) bad("'generator' must be an object");
  GeneratorConfig g;
  for (const auto& [key, v] : j.items()) {
    if (key == "kind") {
      try {
        g.kind = parse_generator_kind(get_as<std::string>(v, key));
      } catch (const std::invalid_argument& e) {
        bad(e.what());
      }
      if (g.kind == GeneratorKind::explicit_list) bad("explicit generator lists are not supported in configs");
    } else if (key == "shift") {
      g.shift = get_as<std::int64_t>(v, key);
    } else if (key == "ratio") {
      g.ratio = get_as<std::int64_t>(v, key);
    } else if (key == "range") {
      g.range = get_as<std::int64_t>(v, key);
    } else {
      bad("unknown generator field '" + key + "'");
    }
  }
  return g;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) bad("top level must be an object");
  ExperimentConfig c;
  bool have_suite = false;
  for (const auto& [key, v] : j.items()) {
    if (key == "suite") {
      c.suite = get_as<std::string>(v, key);
      have_suite = true;
    } else if (key == "primes") {
      c.primes = get_list<std::uint64_t>(v, key, get_u64);
    } else if (key == "generator") {
      c.generator = parse_generator(v);
    } else if (key == "sizes") {
      c.sizes = get_list<std::uint64_t>(v, key, get_u64);
    } else if (key == "size_exponents") {
      c.size_exponents = get_list<double>(v, key, get_num);
    } else if (key == "sizes_b") {
      c.sizes_b = get_list<std::uint64_t>(v, key, get_u64);
    } else if (key == "k") {
      c.k = static_cast<unsigned>(get_u64(v, key));
    } else if (key == "n") {
      for (auto x : get_list<std::uint64_t>(v, key, get_u64)) c.n.push_back(static_cast<unsigned>(x));
    } else if (key == "tau") {
      c.tau = get_list<double>(v, key, get_num);
    } else if (key == "delta") {
      c.delta = get_num(v, key);
    } else if (key == "epsilon") {
      c.epsilon = get_num(v, key);
    } else if (key == "c") {
      c.c = get_num(v, key);
    } else if (key == "M") {
      c.M = get_num(v, key);
    } else if (key == "constant") {
      c.constant = get_num(v, key);
    } else if (key == "seed") {
      c.seed = get_u64(v, key);
    } else if (key == "trials") {
      c.trials = get_u64(v, key);
    } else if (key == "pairs") {
      c.pairs = get_u64(v, key);
    } else if (key == "trend") {
      c.trend = get_as<bool>(v, key);
    } else if (key == "p_max") {
      c.p_max = get_u64(v, key);
    } else if (key == "size_max") {
      c.size_max = get_u64(v, key);
    } else if (key == "output") {
      c.output = get_as<std::string>(v, key);
    } else if (key == "format") {
      c.format = get_as<std::string>(v, key);
    } else if (key == "workers") {
      c.workers = static_cast<unsigned>(get_u64(v, key));
    } else {
      bad("unknown field '" + key + "'");
    }
  }
  if (!have_suite) bad("missing required field 'suite'");
  if (c.format != "csv" && c.format != "json") bad("format must be csv or json");
  if (!(c.constant > 0)) bad("constant must be positive");
  for (auto p : c.primes) {
    if (!is_prime(p)) bad("primes must be prime, got " + std::to_string(p));
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace inclab
