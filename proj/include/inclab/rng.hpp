#pragma once

// Seeded randomness. One master seed per experiment; every trial draws from
// its own substream so results do not depend on execution order.
//
// Substream scheme: seed(master, stream, index) =
//   mix(master ^ mix(stream ^ mix(index + 1)))
// where mix is the splitmix64 finalizer. The engine is std::mt19937_64,
// whose output sequence is fixed by the standard; bounded draws use
// rejection sampling so they are identical across standard libraries.

#include <cstdint>
#include <random>

namespace inclab {

std::uint64_t splitmix64_mix(std::uint64_t x);

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace inclab
