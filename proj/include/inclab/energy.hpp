#pragma once

// Additive, multiplicative and affine energies, exact.

#include <cstdint>
#include <span>
#include <vector>

#include "inclab/affine.hpp"
#include "inclab/arith.hpp"
#include "inclab/correlation.hpp"
#include "inclab/exact.hpp"
#include "inclab/sets.hpp"

namespace inclab {

/// Exact nonnegative count.
using EnergyValue = BigInt;

/// E+_k(A, B) = sum_x r_{A-B}(x)^k. std::invalid_argument for k < 2 or
/// ambient mismatch.
EnergyValue additive_energy_k(const ResidueSet& a, const ResidueSet& b, unsigned k,
                              CorrelationStrategy strategy = CorrelationStrategy::automatic);

/// r_{A-B} as a length-p array (field case).
CountArray difference_counts(const ResidueSet& a, const ResidueSet& b,
                             CorrelationStrategy strategy = CorrelationStrategy::automatic);

/// Discrete logarithm tables for F_p^* with respect to the smallest primitive root.
class DiscreteLog {
 public:
  static constexpr std::uint32_t kMaxPrime = std::uint32_t{1} << 26;
  /// std::length_error above kMaxPrime.
  explicit DiscreteLog(const PrimeModulus& p);
  std::uint32_t generator() const { return g_; }
  /// x != 0.
  std::uint32_t log(std::uint32_t x) const { return log_[x]; }
  std::uint32_t exp(std::uint32_t e) const { return exp_[e]; }

 private:
  std::uint32_t g_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
};

/// r(lambda) = |{(a, b) in (A\0) x (B\0) : a = lambda b}|, indexed by lambda
/// (entry 0 is always 0).
CountArray ratio_counts(const ResidueSet& a, const ResidueSet& b);

/// sum_{lambda != 0} r(lambda)^k with zeros discarded. std::invalid_argument
/// for k < 2, grid sets, or an empty zero-free part.
EnergyValue multiplicative_energy_k(const ResidueSet& a, const ResidueSet& b, unsigned k);

struct ShiftedEnergy {
  EnergyValue value;
  std::uint32_t shift = 0;
};

/// max_s E*_k(A - s); ties go to the smallest s. std::invalid_argument for |A| < 2.
ShiftedEnergy shifted_mult_energy_max(const ResidueSet& a, unsigned k, unsigned workers = 0);

/// sum_x (r_{A-A}(x) - |A|^2/p)^2.
Rational balanced_additive_energy(const ResidueSet& a);

/// Array x -> (alpha * x(z) - beta) / denom with x a nonnegative count array.
/// Balanced functions are the case x = p A, beta = |A|, denom = p.
struct OffsetArray {
  BigInt alpha = 1;
  BigInt beta = 0;
  BigInt denom = 1;
  CountArray x;
};

/// f_A(x) = A(x) - |A|/p.
OffsetArray balanced_array(const ResidueSet& a);
/// The array of A itself.
OffsetArray plain_array(const ResidueSet& a);
/// Exact rational entries.
std::vector<Rational> entries(const OffsetArray& f);

/// T_k for an even k >= 2: sum_x (d^{*(k/2)})(x)^2 with d the cyclic
/// autocorrelation. std::invalid_argument for odd k.
EnergyValue alternating_energy_T(const ResidueSet& a, unsigned k);
Rational alternating_energy_T(const OffsetArray& f, unsigned k);

struct WeightedAffine {
  AffineElement g;
  std::int64_t weight = 1;
};

/// T_2 = sum_g r(g)^2 with r(g) = sum_{l1 l2^{-1} = g} w1 w2; T_4 sums the
/// squares of r * r under the group law. std::invalid_argument for k not in
/// {2, 4}, a zero abscissa, or more than kMaxAffine elements.
inline constexpr std::size_t kMaxAffine = 5000;
BigInt affine_T(std::span<const WeightedAffine> l, unsigned k, const PrimeModulus& p);
BigInt affine_T(std::span<const AffineElement> l, unsigned k, const PrimeModulus& p);

/// Weights p Y(b) - |Y| on X x F_p: the balanced Cartesian family f_L scaled by p.
std::vector<WeightedAffine> balanced_cartesian(const ResidueSet& x, const ResidueSet& y);

/// max over s of E*(f_A translated by s), where f_A(x) = A(x) - |A|/p and
/// E*(g) = sum_{x y = z w, all != 0} g(x) g(y) g(z) g(w). Ties go to the smallest s.
struct ShiftedBalancedEnergy {
  Rational value;
  std::uint32_t shift = 0;
};
ShiftedBalancedEnergy balanced_shifted_mult_energy_max(const ResidueSet& a, unsigned workers = 0);

/// Integer grid: max over real s of E*(A - s) with zeros discarded. Only the
/// shifts s = (a1 a4 - a2 a3) / (a1 + a4 - a2 - a3) and s in A can beat the
/// generic value 2|A|^2 - |A|. std::invalid_argument above kMaxGridShiftSet.
inline constexpr std::size_t kMaxGridShiftSet = 64;
struct GridShiftedEnergy {
  EnergyValue value;
  Rational shift;
};
GridShiftedEnergy grid_shifted_mult_energy_max(const ResidueSet& a);
/// E*(A - s) over the rationals, zeros discarded.
EnergyValue grid_mult_energy(const ResidueSet& a, const Rational& s);

}  // namespace inclab
