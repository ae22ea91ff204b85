#pragma once

#include <cstdint>
#include <random>

namespace rover {

// SplitMix64 finalizer, used to derive independent stream seeds from one
// scenario seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// mt19937_64 is fully specified by the standard; the distributions are not,
// so the uniform mapping is done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  static Rng for_stream(std::uint64_t scenario_seed, std::uint64_t stream) {
    return Rng(splitmix64(scenario_seed ^ splitmix64(stream)));
  }

  // Uniform on (0, 1] with 53 bits of resolution.
  double uniform_open_closed() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  std::mt19937_64 engine_;
};

}  // namespace rover
