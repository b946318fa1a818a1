#pragma once

#include <cstdint>
#include <random>

// Deterministic randomness: every consumer pulls from an explicitly derived
// stream so that runs decompose (per node, per strategy, per owner, ...) and
// reruns are byte-identical. No std::*_distribution anywhere -- those are
// implementation-defined; the few transforms we need are written out.

namespace repsim {

// splitmix64 finalizer; good avalanche, standard constants.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

enum class Stream : std::uint64_t {
  topology = 1,
  churn_params = 2,
  churn_trace = 3,
  bandwidth = 4,
  storage = 5,
  owners = 6,
  piggyback = 7,
  strategy = 8,
};

// Chain-hash the master seed with a purpose tag and up to three indices.
inline std::uint64_t derive_seed(std::uint64_t master, Stream purpose,
                                 std::uint64_t a = 0, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
  std::uint64_t s = mix64(master ^ 0x5291811fe6a7ce6bULL);
  s = mix64(s ^ static_cast<std::uint64_t>(purpose));
  s = mix64(s ^ a);
  s = mix64(s ^ b);
  s = mix64(s ^ c);
  return s;
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform double in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). bound >= 1.
  std::uint64_t uniform_int(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
      r = gen_();
    } while (r >= limit);
    return r % bound;
  }

  double uniform_in(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace repsim
