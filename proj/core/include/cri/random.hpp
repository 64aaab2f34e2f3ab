#pragma once

#include <cstdint>
#include <random>

namespace cri {

/// Independent substreams keyed off one master seed. A stream for
/// (purpose, a, b) never depends on which other streams were drawn, so
/// changing one user's behaviour leaves everyone else's draws untouched.
enum class StreamPurpose : std::uint64_t {
  cheat_decision = 1,
  cheat_value = 2,
  truth_init = 3,
  schedule = 4,
  trace = 5,
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, StreamPurpose purpose,
                                    std::uint64_t a = 0,
                                    std::uint64_t b = 0) noexcept {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ static_cast<std::uint64_t>(purpose));
  h = mix64(h ^ a);
  h = mix64(h ^ b);
  return h;
}

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_{seed} {}
  RandomStream(std::uint64_t master, StreamPurpose purpose, std::uint64_t a = 0,
               std::uint64_t b = 0)
      : engine_{derive_seed(master, purpose, a, b)} {}

  /// Uniform in [0, 1).
  double uniform() {
    return std::uniform_real_distribution<double>{0.0, 1.0}(engine_);
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>{lo, hi}(engine_);
  }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cri
