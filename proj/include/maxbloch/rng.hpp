// Deterministic counter-based random number generation (splitmix64).
//
// The generator is pinned so that seeds are portable across platforms and
// languages: state advances by 0x9E3779B97F4A7C15 per draw and the output mix
// is the standard splitmix64 finalizer.  Uniform doubles take the top 53 bits.
// Stream layout (recorded in run manifests as generator "splitmix64-v1"):
//   - mode phases: alpha_k = 2pi * u53(next()) consumed in index order
//     k = -N..N from a stream seeded by PumpSpec::seed;
//   - ensemble member i uses the (i+1)-th output of a stream seeded by the
//     master seed as its PumpSpec::seed.
#pragma once

#include <cstdint>
#include <vector>

#include "maxbloch/units.hpp"

namespace maxbloch {

inline constexpr const char* kGeneratorName = "splitmix64-v1";

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Uniform double in [0, 1) from the top 53 bits; exact in IEEE-754.
inline double uniform_unit(std::uint64_t v) {
  return static_cast<double>(v >> 11) * 0x1.0p-53;
}

// Phases alpha_k in [0, 2pi) for k = -n_modes..n_modes, in index order.
inline std::vector<double> draw_phases(std::uint64_t seed, int n_modes) {
  SplitMix64 gen(seed);
  std::vector<double> phases(2 * n_modes + 1);
  for (auto& a : phases) a = kTwoPi * uniform_unit(gen.next());
  return phases;
}

// Seed for ensemble member `index` derived from the master seed.
inline std::uint64_t member_seed(std::uint64_t master_seed, int index) {
  SplitMix64 gen(master_seed);
  std::uint64_t s = 0;
  for (int i = 0; i <= index; ++i) s = gen.next();
  return s;
}

}  // namespace maxbloch
