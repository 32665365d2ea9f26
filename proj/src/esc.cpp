#include "thevenin/esc.hpp"

#include <cmath>

#include "thevenin/errors.hpp"
#include "thevenin/phasor.hpp"

namespace thevenin {

HighPassCoefficients HighPassCoefficients::bilinear(double cutoff_rad_s, double dt) noexcept {
  const double k = 0.5 * cutoff_rad_s * dt;
  return {1.0 / (1.0 + k), (1.0 - k) / (1.0 + k)};
}

HighPassState high_pass_step(HighPassState s, const HighPassCoefficients& c, double x) noexcept {
  if (!s.primed) {
    s.x_prev = x;
    s.primed = true;
  }
  s.y = c.gain * (x - s.x_prev) + c.pole * s.y;
  s.x_prev = x;
  return s;
}

void EscConfig::validate() const {
  auto finite_positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!finite_positive(dither_amplitude)) throw ConfigError("esc.dither_amplitude_rad", "must be > 0");
  if (!finite_positive(dither_freq)) throw ConfigError("esc.dither_freq_hz", "must be > 0");
  if (!finite_positive(hpf_cutoff)) throw ConfigError("esc.hpf_cutoff_hz", "must be > 0");
  if (!std::isfinite(gain)) throw ConfigError("esc.gain", "must be finite");
  if (!finite_positive(sample_dt)) throw ConfigError("scenario.sample_dt", "must be > 0");
  if (!std::isfinite(theta_hat0)) throw ConfigError("esc.theta_hat0_rad", "must be finite");
  if (!(hpf_cutoff < dither_freq)) {
    throw ConfigError("esc.hpf_cutoff_hz", "high-pass cutoff must be below the dither frequency");
  }
  if (!(dither_freq * sample_dt < kPi)) {
    throw ConfigError("esc.dither_freq_hz", "dither frequency must be below Nyquist for scenario.sample_dt");
  }
}

EscState esc_init(const EscConfig& cfg) noexcept {
  EscState s;
  s.theta_hat = cfg.theta_hat0;
  return s;
}

double esc_command(const EscState& state, const EscConfig& cfg) noexcept {
  return state.theta_hat + cfg.dither_amplitude * std::sin(state.dither_phase);
}

EscState esc_step(const EscState& state, const EscConfig& cfg, double cost) noexcept {
  EscState next = state;
  next.hpf = high_pass_step(state.hpf, HighPassCoefficients::bilinear(cfg.hpf_cutoff, cfg.sample_dt), cost);
  next.xi = next.hpf.y * std::sin(state.dither_phase);
  next.theta_hat = state.theta_hat + cfg.gain * next.xi * cfg.sample_dt;
  next.dither_phase = std::fmod(state.dither_phase + cfg.dither_freq * cfg.sample_dt, 2.0 * kPi);
  return next;
}

}  // namespace thevenin
