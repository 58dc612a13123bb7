#pragma once

#include <cstdint>

namespace prufer {

// Counter-keyed random stream: the state is derived from (seed, k1, k2, k3)
// by a fixed mixing function, so the stream for a given key is the same no
// matter which thread draws it or in which order streams are created.
// Sampling code keys one stream per sample index, which is what makes the
// Monte Carlo results independent of the worker count.
//
// The generator itself is splitmix64 (Steele, Lea, Vigna): a Weyl sequence
// passed through a 64-bit finalizer.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t k1 = 0, std::uint64_t k2 = 0,
               std::uint64_t k3 = 0) {
    std::uint64_t s = mix(seed + 0x9E3779B97F4A7C15ull);
    s = mix(s ^ mix(k1 + 0xBF58476D1CE4E5B9ull));
    s = mix(s ^ mix(k2 + 0x94D049BB133111EBull));
    s = mix(s ^ mix(k3 + 0xD6E8FEB86659FD93ull));
    state_ = s;
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  // Unbiased integer in [0, bound), bound >= 1 (Lemire's multiply-shift
  // rejection method on the top 32 bits).
  std::uint32_t next_below(std::uint32_t bound) {
    std::uint32_t x = static_cast<std::uint32_t>(next_u64() >> 32);
    std::uint64_t m = static_cast<std::uint64_t>(x) * bound;
    std::uint32_t low = static_cast<std::uint32_t>(m);
    if (low < bound) {
      const std::uint32_t threshold = (0u - bound) % bound;
      while (low < threshold) {
        x = static_cast<std::uint32_t>(next_u64() >> 32);
        m = static_cast<std::uint64_t>(x) * bound;
        low = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  // Uniform vertex label in {1..n}.
  int uniform_vertex(int n) { return 1 + static_cast<int>(next_below(static_cast<std::uint32_t>(n))); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
};

}  // namespace prufer
