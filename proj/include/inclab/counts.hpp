#pragma once

// Collinear-tuple counts, spectrum moments, balanced moments and incidences.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "inclab/energy.hpp"
#include "inclab/exact.hpp"
#include "inclab/sets.hpp"
#include "inclab/spectrum.hpp"

namespace inclab {

enum class MomentFilter {
  all_i_ge_2,           // every class, i >= 2
  slope_only_i_ge_2,    // slope class incl. horizontal, i >= 2
  slope_nonzero_all_i,  // lambda != 0, i >= 1 (field only)
  tilde,                // lambda != 0, i >= 2
};

std::string to_string(MomentFilter f);
MomentFilter parse_moment_filter(const std::string& s);

struct MomentValue {
  BigInt count;
  MomentFilter filter = MomentFilter::all_i_ge_2;
  unsigned k = 0;
};

/// Sum over lines in the filter of i(l)^k. std::invalid_argument for k < 2,
/// or slope_nonzero_all_i on a grid spectrum.
MomentValue spectrum_moment(const RichnessSpectrum& s, unsigned k, MomentFilter filter);
MomentValue spectrum_moment(const ResidueSet& a, const ResidueSet& b, unsigned k, MomentFilter filter,
                            unsigned workers = 0);

/// Lines restricted to a filter.
Histogram filtered_histogram(const RichnessSpectrum& s, MomentFilter filter);

/// Point-count cap for the determinant oracle.
inline constexpr std::size_t kMaxOraclePoints = 512;

/// Ordered k-tuples of points of A x B (repetition allowed) on a common line,
/// counted by exact determinant tests. std::invalid_argument for k < 2 or
/// more than kMaxOraclePoints points.
BigInt collinear_tuples_oracle(const ResidueSet& a, const ResidueSet& b, unsigned k);

/// sum_{lambda != 0} r(lambda)^k over (A\0) x (B\0).
EnergyValue tilde_mult_energy(const ResidueSet& a, const ResidueSet& b, unsigned k);

/// sum over lambda != 0 lines with i >= 2 of |i(l) - |A||B|/p|^n.
Rational balanced_moment(const RichnessSpectrum& s, unsigned n);
Rational balanced_moment(const ResidueSet& a, unsigned n, unsigned workers = 0);

/// A point of F_p^2 (field case, reduced coordinates) or Z^2.
using Point = IntPoint;

/// sum over l in L of |l cap P|. std::invalid_argument when a line's form does
/// not match the ambient (IntLine over F_p, slope forms over Z).
BigInt incidence_count(std::span<const Point> points, std::span<const LineId> lines,
                       const std::optional<PrimeModulus>& ambient);
/// P = A x B.
BigInt incidence_count(const ResidueSet& a, const ResidueSet& b, std::span<const LineId> lines);

struct TranslationCount {
  BigInt count;
  Rational error;  // count - |A||B||X||Y| / p
};

/// |{(a, b, x, y) in A x B x X x Y : y = b x + a}|. theorem_mode rejects 0 in X.
TranslationCount translation_quadruples(const ResidueSet& a, const ResidueSet& b, const ResidueSet& x,
                                        const ResidueSet& y, bool theorem_mode = false, unsigned workers = 0);

}  // namespace inclab
