#pragma once

#include <cmath>
#include <cstdint>

namespace cutrank {

// Counter-mode splitmix64 stream. Every draw is a pure function of
// (seed, stream, counter), so per-sample streams replay identically whether
// samples run serially or across threads.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(mix(seed + kGamma) ^ mix(stream * kStreamSalt + kGamma))) {}

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGamma); }

  // Uniform on (0, 1]; never 0 so it is safe under log().
  double uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; generates pairs, caches the spare.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * kPi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ull;
  static constexpr double kPi = 3.14159265358979323846;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cutrank
