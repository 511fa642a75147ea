#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace sand {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic 64-bit stream. Same seed, same sequence on every platform:
// the engine is fully specified by the standard and bounded draws use our
// own rejection step rather than std::uniform_int_distribution.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for a sub-task (sampler method, worker, run).
  static RandomSource derive(std::uint64_t seed, std::uint64_t stream) {
    return RandomSource(splitmix64(seed ^ splitmix64(stream + 1)));
  }

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform on [1, n].
  std::uint64_t one_to(std::uint64_t n) { return below(n) + 1; }

  // Uniform on [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sand
