#pragma once

// Line-richness spectra of Cartesian products A x B.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "inclab/affine.hpp"
#include "inclab/arith.hpp"
#include "inclab/exact.hpp"
#include "inclab/sets.hpp"

namespace inclab {

/// richness i -> number of lines with exactly i points.
using Histogram = std::map<std::uint64_t, std::uint64_t>;

void merge_into(Histogram& into, const Histogram& from);
/// sum over lines with richness >= min_richness of i^k.
BigInt power_sum(const Histogram& h, unsigned k, std::uint64_t min_richness = 1);
/// Number of lines with richness >= min_richness.
std::uint64_t line_count(const Histogram& h, std::uint64_t min_richness = 1);

/// y = lambda x + mu over F_p; lambda = 0 is horizontal.
struct SlopeLine {
  std::uint32_t lambda = 0;
  std::uint32_t mu = 0;
  friend auto operator<=>(const SlopeLine&, const SlopeLine&) = default;
};

/// x = c over F_p.
struct VerticalLine {
  std::uint32_t c = 0;
  friend auto operator<=>(const VerticalLine&, const VerticalLine&) = default;
};

using LineId = std::variant<SlopeLine, VerticalLine, IntLine>;

/// Points of A x B are (a, b) with a in A on the x-axis and b in B on the y-axis.
struct RichnessSpectrum {
  std::optional<PrimeModulus> modulus;  // absent: integer grid
  std::size_t size_a = 0;
  std::size_t size_b = 0;

  // Field case: one histogram per slope lambda (index), lines with i >= 1.
  std::vector<Histogram> by_slope;
  // Both cases: lines x = c with i >= 1.
  Histogram vertical;
  // Grid case only: lines y = c, and non-axis-parallel lines with i >= 2.
  Histogram horizontal;
  Histogram oblique;

  bool is_field() const { return modulus.has_value(); }
  /// Field: all slopes including lambda = 0. Grid: horizontal + oblique.
  Histogram slope_class() const;
  /// Field: lambda != 0. Grid: oblique.
  Histogram slope_nonzero() const;
  /// Field: lambda = 0. Grid: horizontal.
  Histogram horizontal_class() const;
  /// Every class combined.
  Histogram all_classes() const;

  friend bool operator==(const RichnessSpectrum&, const RichnessSpectrum&) = default;
};

/// Grid case cap on |A||B| for pair enumeration.
inline constexpr std::size_t kMaxGridPoints = 100000;

/// Exact spectrum. Field case sweeps lambda and buckets mu = b - lambda a;
/// grid case hashes canonical lines over point pairs.
/// std::invalid_argument on modulus mismatch or grid inputs above kMaxGridPoints.
RichnessSpectrum grid_spectrum(const ResidueSet& a, const ResidueSet& b, unsigned workers = 0);

/// Field case: calls visit(lambda, mu, richness) for every slope line with
/// lambda in [lambda_begin, lambda_end) meeting A x B, in increasing
/// (lambda, mu) order.
void for_each_slope_line(const ResidueSet& a, const ResidueSet& b, std::uint32_t lambda_begin,
                         std::uint32_t lambda_end,
                         const std::function<void(std::uint32_t, std::uint32_t, std::uint32_t)>& visit);

enum class RichMode { raw, balanced };

struct RichLine {
  LineId line;
  std::uint64_t richness = 0;
  Rational balanced;  // i(l) - |A||B|/p; balanced mode only
};

struct RichLineSet {
  double tau = 0;
  RichMode mode = RichMode::raw;
  std::vector<RichLine> members;
};

/// Raw: every line (all classes) with i >= tau; requires tau >= 1, and
/// tau >= 2 on the grid where 1-point lines are infinite.
/// Balanced (field only): non-vertical, non-horizontal lines with i >= 2 and
/// |i - |A||B|/p| >= tau; requires tau > 0.
RichLineSet rich_lines(const ResidueSet& a, const ResidueSet& b, double tau, RichMode mode);

/// Points (lambda, mu) of the affine lines in a rich-line set.
std::vector<AffineElement> affine_points(const RichLineSet& lines);

struct LineStats {
  std::uint64_t m = 0;  // max points on a vertical line
  std::uint64_t big_m = 0;  // max points on any line
};

/// Exact m and M for a point set in F_p^* x F_p (duplicates ignored).
/// std::invalid_argument for empty input or a zero abscissa.
LineStats line_point_stats(std::span<const AffineElement> points, const PrimeModulus& p);

/// CSV: class,lambda_or_c,richness,count.
void write_spectrum_csv(std::ostream& out, const RichnessSpectrum& s);
/// {class: {richness: count}}.
void write_spectrum_json(std::ostream& out, const RichnessSpectrum& s);

}  // namespace inclab
