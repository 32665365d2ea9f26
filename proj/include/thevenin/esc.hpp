#pragma once

#include "thevenin/phasor.hpp"

namespace thevenin {

/// First-order high-pass H(s) = s / (s + wc), discretized with the bilinear
/// transform:
///   y[n] = g·(x[n] − x[n−1]) + p·y[n−1],  g = 1/(1+k), p = (1−k)/(1+k),
/// with k = wc·dt/2.
struct HighPassState {
  double y = 0.0;
  double x_prev = 0.0;
  bool primed = false;
};

struct HighPassCoefficients {
  double gain = 0.0;
  double pole = 0.0;

  [[nodiscard]] static HighPassCoefficients bilinear(double cutoff_rad_s, double dt) noexcept;
};

/// Advances the filter by one sample. An unprimed filter takes `x` as its
/// previous input first, so the first sample produces no step transient.
[[nodiscard]] HighPassState high_pass_step(HighPassState s, const HighPassCoefficients& c, double x) noexcept;

struct EscConfig {
  double dither_amplitude = 0.4;        ///< rad
  double dither_freq = 2.0 * kPi;          ///< rad/s
  double hpf_cutoff = 2.0 * kPi * 0.1;     ///< rad/s
  double gain = 1e-4;                   ///< 1/(V²·s), positive for maximization
  double sample_dt = 0.01;              ///< s
  double theta_hat0 = 0.0;              ///< rad

  /// Throws ConfigError with "esc.<field>" on violation.
  void validate() const;
};

struct EscState {
  double theta_hat = 0.0;     ///< estimate of the maximizing injection angle, rad
  HighPassState hpf;          ///< cost high-pass memory, V²
  double dither_phase = 0.0;  ///< [0, 2π)
  double xi = 0.0;            ///< last demodulated value, V²
};

[[nodiscard]] EscState esc_init(const EscConfig& cfg) noexcept;

/// Angle to inject this step: theta_hat + a·sin(dither_phase).
[[nodiscard]] double esc_command(const EscState& state, const EscConfig& cfg) noexcept;

/// One loop iteration on the cost observed for the last command:
/// high-pass, demodulate with sin(dither_phase), forward-Euler integrate
/// K·ξ·dt into theta_hat, advance the dither phase.
[[nodiscard]] EscState esc_step(const EscState& state, const EscConfig& cfg, double cost) noexcept;

/// The voltage map peaks at θ = −α, so α̂ = −theta_hat.
[[nodiscard]] constexpr double alpha_estimate(const EscState& state) noexcept { return -state.theta_hat; }

}  // namespace thevenin
