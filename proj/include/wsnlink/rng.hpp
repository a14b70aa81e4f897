#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace wsnlink {

/// SplitMix64 finalizer; used to derive independent sub-stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of sub-stream `index` under `root`. Every parallel batch in this
/// library splits its work into fixed blocks and seeds block i with
/// substream_seed(root, i), so results never depend on the worker count.
constexpr std::uint64_t substream_seed(std::uint64_t root, std::uint64_t index) noexcept {
  return splitmix64(root ^ splitmix64(index + 1));
}

/**
 * Seeded random source.
 *
 * Wraps std::mt19937_64, whose output sequence is fixed by the standard.
 * Uniforms take the top 53 bits; normals use the Box-Muller transform
 * (two uniforms in, one normal out, no cached second value) rather than
 * std::normal_distribution, whose algorithm varies between standard
 * libraries. Single owner; not thread safe.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// One standard normal draw.
  double standard_normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wsnlink
