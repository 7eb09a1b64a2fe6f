#pragma once

#include <cstdint>
#include <random>

namespace cyclelist {

/// splitmix64 finaliser; used to decorrelate (seed, stream) pairs.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Identifies one independent random sequence. The generated values depend
/// only on (master_seed, stream_index): an mt19937_64 seeded from a mix of
/// both, with bounded draws by rejection so results do not depend on the
/// standard library's distribution implementations.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  std::uint64_t engine_seed() const noexcept { return mix64(master_seed ^ mix64(stream_index)); }
};

class Rng {
 public:
  explicit Rng(RngStream stream) : engine_(stream.engine_seed()) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cyclelist
