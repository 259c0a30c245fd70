#pragma once

#include <cmath>
#include <cstdint>

namespace molhd {

// Deterministic random source used everywhere the library needs randomness.
//
// The generator is SplitMix64 (Steele, Lea, Flood; "Fast splittable
// pseudorandom number generators", OOPSLA 2014). Its integer output stream
// is a pure function of the seed, so the raw and uniform draws are
// bit-identical across platforms. normal() additionally goes through libm
// (log/sin/cos), which can differ in the last ulp between C libraries;
// on any fixed toolchain every stream is bit-exact.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Multiply-high reduction; the bias is below
  // n * 2^-64 and ignored.
  std::uint64_t uniform_int(std::uint64_t n) {
    using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<u128>(next_u64()) * n) >> 64);
  }

  // +1 or -1, equal probability.
  int sign() { return (next_u64() >> 63) ? 1 : -1; }

  // Standard normal via Box-Muller. Always consumes exactly two uniforms,
  // so the draw count per call is fixed.
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::uint64_t state_;
};

// Decorrelates seeds for the independent sampling stages of one run
// (codebooks, axis basis, split, readout init, reservoir wiring). The mix
// is the SplitMix64 finalizer, so distinct (base, stream) pairs land far
// apart in seed space.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace molhd
