#pragma once

// Brute-force reference computations. Each one follows the definition
// directly and shares no counting code with the production modules.

#include <cstdint>
#include <span>
#include <vector>

#include "inclab/affine.hpp"
#include "inclab/energy.hpp"
#include "inclab/exact.hpp"
#include "inclab/sets.hpp"
#include "inclab/spectrum.hpp"

namespace inclab::oracle {

/// Field: every one of the p^2 + p lines tested point by point.
/// Grid: lines through point pairs, grouped by exact rational slope/intercept.
RichnessSpectrum all_lines_spectrum(const ResidueSet& a, const ResidueSet& b);

/// Ordered k-tuples of A x B on a common line, by enumerating all N^k tuples.
BigInt enumerate_collinear_tuples(const ResidueSet& a, const ResidueSet& b, unsigned k);

/// |{(a1, a2, b1, b2) : a1 - b1 = a2 - b2}|.
BigInt additive_energy_quadruples(const ResidueSet& a, const ResidueSet& b);
/// sum_x r_{A-B}(x)^k with r counted pair by pair.
BigInt additive_energy_k(const ResidueSet& a, const ResidueSet& b, unsigned k);
/// |{(a1, a2, b1, b2) nonzero : a1 b2 = a2 b1}|.
BigInt mult_energy_quadruples(const ResidueSet& a, const ResidueSet& b);
/// sum_{lambda != 0} |{(a, b) nonzero : a = lambda b}|^k by trying every lambda.
BigInt mult_energy_k(const ResidueSet& a, const ResidueSet& b, unsigned k);
/// max over s of mult_energy_k(A - s, A - s) with the smallest maximizing s.
ShiftedEnergy shifted_mult_energy_max(const ResidueSet& a, unsigned k);

/// sum_{a - b = c - d} f(a) f(b) f(c) f(d) with f = f_A.
Rational balanced_energy_quadruples(const ResidueSet& a);
/// sum_x f_A(x) f_A(lambda x + mu).
Rational balanced_line_value(const ResidueSet& a, std::uint32_t lambda, std::uint32_t mu);
/// sum over lambda != 0 lines with i >= 2 of |i - |A|^2/p|^n, with i counted
/// point by point on each of the p(p - 1) lines.
Rational balanced_moment(const ResidueSet& a, unsigned n);
/// max over s of sum_{x y = z w, all != 0} g(x) g(y) g(z) g(w) with g(x) = f_A(x + s).
ShiftedBalancedEnergy balanced_shifted_mult_energy_max(const ResidueSet& a);

/// T_k by enumerating all 2k-tuples: a1 - a2 + ... - a_k = b1 - b2 + ... - b_k.
BigInt alternating_energy_T(const ResidueSet& a, unsigned k);
/// T_k for an arbitrary rational array f: sum of f(x1)...f(x_{2k}) over the
/// solutions, enumerated over the k-fold alternating sums.
Rational alternating_energy_T(std::span<const Rational> f, unsigned k);

/// sum over l1 l2^{-1} = l3 l4^{-1} of w1 w2 w3 w4, with the group law.
BigInt affine_T2(std::span<const WeightedAffine> l, const PrimeModulus& p);
/// T_2(f_L) for L = X x Y with weights Y(b) - |Y|/p via the slope factorization
/// sum_lambda r_{X/X}(lambda)^2 sum_mu (sum_b f_Y(mu + lambda b) f_Y(b))^2.
Rational cartesian_T2(const ResidueSet& x, const ResidueSet& y);

/// |{(a, b, x, y) : y = b x + a}| by a 4-fold loop.
BigInt translation_quadruples(const ResidueSet& a, const ResidueSet& b, const ResidueSet& x, const ResidueSet& y);

/// m and M by testing every line of F_p^2.
LineStats line_point_stats(std::span<const AffineElement> points, const PrimeModulus& p);

}  // namespace inclab::oracle
