#pragma once

#include <cstdint>
#include <vector>

#include "inclab/arith.hpp"
#include "inclab/rng.hpp"
#include "inclab/sets.hpp"

namespace inclab::test {

inline std::vector<std::uint64_t> small_primes(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = lo; q <= hi; ++q) {
    if (is_prime(q)) out.push_back(q);
  }
  return out;
}

// Random subset of F_p with 1 <= size <= max_size.
inline ResidueSet random_field_set(Rng& rng, const PrimeModulus& p, std::size_t max_size, std::size_t min_size = 1) {
  const std::size_t cap = std::min<std::size_t>(max_size, p.value());
  const std::size_t n = min_size + rng.below(cap - min_size + 1);
  GeneratorSpec s;
  s.modulus = p;
  s.n = n;
  s.seed = rng.next();
  return generate(s);
}

inline ResidueSet random_grid_set(Rng& rng, std::int64_t range, std::size_t max_size, std::size_t min_size = 1) {
  const std::size_t n = min_size + rng.below(max_size - min_size + 1);
  GeneratorSpec s;
  s.n = n;
  s.range = range;
  s.seed = rng.next();
  return generate(s);
}

inline ResidueSet field_set(std::uint64_t p, std::vector<std::int64_t> e) {
  return ResidueSet::in_field(PrimeModulus(p), e);
}

inline ResidueSet grid_set(std::vector<std::int64_t> e) { return ResidueSet::on_grid(e); }

}  // namespace inclab::test
