#include "thevenin/noise.hpp"

#include <cmath>

#include "thevenin/errors.hpp"
#include "thevenin/phasor.hpp"

namespace thevenin {

NoiseChannel::NoiseChannel(double sigma, std::uint64_t seed) : sigma_(sigma), seed_(seed), engine_(seed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ConfigError("noise.sigma", "must be >= 0");
}

double NoiseChannel::uniform() {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return static_cast<double>(engine_() >> 11) * kScale;
}

double NoiseChannel::standard_normal() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  // 1 - u lies in (0, 1], keeping the log finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double phase = 2.0 * kPi * u2;
  spare_ = radius * std::sin(phase);
  return radius * std::cos(phase);
}

double measure(double true_v, NoiseChannel& channel) {
  if (channel.sigma() == 0.0) return true_v;
  return true_v + channel.draw();
}

}  // namespace thevenin
