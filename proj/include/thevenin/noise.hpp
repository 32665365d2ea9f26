#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace thevenin {

/// Additive Gaussian measurement noise with a portable, seedable stream.
///
/// Draws come from std::mt19937_64 (whose output sequence is fixed by the
/// standard), converted to a uniform double on [0, 1) from the top 53 bits,
/// then to N(0, 1) with the Box-Muller transform. Each transform yields two
/// normals; the second is cached and returned by the next call. The emitted
/// sequence is therefore identical on every conforming platform for a given
/// seed and call order.
class NoiseChannel {
 public:
  NoiseChannel(double sigma, std::uint64_t seed);

  [[nodiscard]] double sigma() const noexcept { return sigma_; }
  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  /// One standard-normal variate.
  [[nodiscard]] double standard_normal();

  /// One noise sample, N(0, sigma²).
  [[nodiscard]] double draw() { return sigma_ * standard_normal(); }

 private:
  [[nodiscard]] double uniform();

  double sigma_;
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// Returns `true_v` plus one noise draw. With sigma == 0 the input is
/// returned unchanged and the stream is not advanced.
[[nodiscard]] double measure(double true_v, NoiseChannel& channel);

}  // namespace thevenin
