#pragma once

#include <cstdint>
#include <random>

namespace awmm {

// SplitMix64 finalizer, used to decorrelate seeds derived from one base seed.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed for one named stream of a campaign: stream 0 drives node deployment,
// stream 1 + t drives the irregularity draws of trial t.
inline std::uint64_t derive_stream_seed(std::uint64_t base_seed, std::uint64_t stream) {
  return splitmix64(base_seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
}

// mt19937_64 with the 53-bit mantissa trick for uniforms. std::uniform_real_distribution
// is not pinned down by the standard; this keeps draw sequences identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace awmm
