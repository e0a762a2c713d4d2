#pragma once

#include <cstdint>

namespace tsnorm {

// SplitMix64. Small, seedable, and identical across platforms, which is what
// the deterministic-report contract needs; statistical quality is plenty for
// property sampling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // in [0,1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // inclusive range, lo <= hi
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    // Lemire's multiply-shift; bias is < 2^-64 * span, irrelevant here.
    const auto wide = static_cast<unsigned __int128>(next()) * span;
    return lo + static_cast<int>(wide >> 64);
  }

  bool coin() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

// Independent per-sample stream so samples can be evaluated in any order
// (or in parallel) without changing their draws.
inline Rng derive_stream(std::uint64_t seed, std::uint64_t index) {
  Rng mixer(seed ^ (0xd1b54a32d192ed03ULL * (index + 1)));
  return Rng(mixer.next());
}

}  // namespace tsnorm
