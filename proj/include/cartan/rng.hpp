#pragma once

#include <cmath>
#include <cstdint>

namespace cartan {

// Counter-based generator: output k is splitmix64(seed + k * golden), so a
// stream is a pure function of (seed, counter) and identical on every
// platform. Gaussians come from Box-Muller on consecutive outputs.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in (0,1), 53-bit mantissa, never exactly 0
  double next_double() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // standard normal pair via Box-Muller
  void next_gaussian_pair(double& g0, double& g1) {
    const double u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    g0 = r * std::cos(a);
    g1 = r * std::sin(a);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace cartan
