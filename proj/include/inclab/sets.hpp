#pragma once

// Finite subsets of F_p or of the integers, their generators, and sumsets.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inclab/arith.hpp"
#include "inclab/exact.hpp"

namespace inclab {

/// Grid elements are bounded so that pair differences and products stay exact.
inline constexpr std::int64_t kMaxGridElement = (std::int64_t{1} << 31) - 1;

/// Sorted, distinct elements of F_p (field case) or of Z (grid case).
class ResidueSet {
 public:
  /// Elements are reduced modulo p, sorted and deduplicated.
  static ResidueSet in_field(const PrimeModulus& p, std::span<const std::int64_t> elements);
  /// Elements are sorted and deduplicated; |x| <= kMaxGridElement.
  static ResidueSet on_grid(std::span<const std::int64_t> elements);

  bool is_field() const { return modulus_.has_value(); }
  /// std::logic_error for grid sets.
  const PrimeModulus& modulus() const;
  const std::optional<PrimeModulus>& ambient() const { return modulus_; }

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  std::span<const std::int64_t> elements() const { return elements_; }
  /// Field case only: elements as 32-bit residues.
  std::span<const std::uint32_t> residues() const;
  /// Field case only: length-p 0/1 array.
  std::span<const std::uint8_t> indicator() const;
  bool contains(std::int64_t x) const;

  /// {a - s}; in the field case s is reduced modulo p.
  ResidueSet shifted(std::int64_t s) const;
  /// {lambda * a}.
  ResidueSet dilated(std::int64_t lambda) const;
  /// A \ {0}.
  ResidueSet without_zero() const;

  friend bool operator==(const ResidueSet& a, const ResidueSet& b) {
    return a.modulus_ == b.modulus_ && a.elements_ == b.elements_;
  }

 private:
  ResidueSet() = default;
  void finalize();

  std::optional<PrimeModulus> modulus_;
  std::vector<std::int64_t> elements_;
  std::vector<std::uint32_t> residues_;
  std::vector<std::uint8_t> indicator_;
};

/// Throws std::invalid_argument unless both sets live in the same ambient.
void require_same_ambient(const ResidueSet& a, const ResidueSet& b);
/// Throws std::invalid_argument unless the set is a field set.
void require_field(const ResidueSet& a, const char* op);

enum class GeneratorKind { random, interval, interval_inverse, geometric, explicit_list };

std::string to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(const std::string& s);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::random;
  std::optional<PrimeModulus> modulus;  // absent: integer grid
  std::size_t n = 0;
  std::int64_t shift = 0;   // interval_inverse: X = [n]^{-1} + shift
  std::int64_t ratio = 2;   // geometric: {ratio^0, ..., ratio^{n-1}}
  std::int64_t range = 0;   // grid random: elements drawn from [0, range)
  std::optional<std::uint64_t> seed;   // required for random
  std::vector<std::int64_t> elements;  // explicit_list
};

/// Deterministic in (spec, seed). std::invalid_argument on invalid specs:
/// n > p, geometric ratio of multiplicative order < n, missing seed, ...
ResidueSet generate(const GeneratorSpec& spec);

enum class SetOp { add, sub, mul };

/// {a op b}. For mul, products are taken literally (zero allowed).
ResidueSet sumset(const ResidueSet& a, const ResidueSet& b, SetOp op);

/// |A + A| / |A|; std::invalid_argument for empty A.
Rational doubling_ratio(const ResidueSet& a);

/// nA - mA for n, m >= 1.
ResidueSet iterated_sumset(const ResidueSet& a, unsigned n, unsigned m);

// Set file format: first line "p <prime>" or "grid", then one integer per line.
void write_set(std::ostream& out, const ResidueSet& set);
ResidueSet read_set(std::istream& in);
void write_set_file(const std::string& path, const ResidueSet& set);
ResidueSet read_set_file(const std::string& path);

}  // namespace inclab
