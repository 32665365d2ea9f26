#include "thevenin/phasor.hpp"

#include <cmath>

#include "thevenin/errors.hpp"

namespace thevenin {

double normalize_angle(double rad) noexcept {
  if (!std::isfinite(rad)) return rad;
  double r = std::remainder(rad, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  if (r > kPi) r -= 2.0 * kPi;
  return r;
}

Phasor::Phasor(double magnitude, double angle_rad) noexcept {
  if (magnitude < 0.0) {
    magnitude = -magnitude;
    angle_rad += kPi;
  }
  magnitude_ = magnitude;
  angle_ = magnitude == 0.0 ? 0.0 : normalize_angle(angle_rad);
}

Phasor Phasor::from_complex(std::complex<double> z) noexcept {
  const double mag = std::abs(z);
  return {mag, mag == 0.0 ? 0.0 : std::arg(z)};
}

std::complex<double> Phasor::to_complex() const noexcept { return std::polar(magnitude_, angle_); }

Phasor operator+(const Phasor& a, const Phasor& b) noexcept {
  return Phasor::from_complex(a.to_complex() + b.to_complex());
}

Phasor operator-(const Phasor& a, const Phasor& b) noexcept {
  return Phasor::from_complex(a.to_complex() - b.to_complex());
}

Phasor operator*(const Phasor& a, const Phasor& b) noexcept {
  return Phasor::from_complex(a.to_complex() * b.to_complex());
}

void TheveninParams::validate(const std::string& key_prefix) const {
  if (!(vth > 0.0) || !std::isfinite(vth)) throw ConfigError(key_prefix + "vth", "must be > 0");
  if (!(zth > 0.0) || !std::isfinite(zth)) throw ConfigError(key_prefix + "zth", "must be > 0");
  if (!(alpha > -kPi / 2.0 && alpha < kPi / 2.0)) {
    throw ConfigError(key_prefix + "alpha_deg", "impedance angle must lie strictly inside (-90, 90) degrees");
  }
}

Phasor node_voltage(const TheveninParams& params, const Phasor& injection) noexcept {
  const std::complex<double> source{params.vth, 0.0};
  const std::complex<double> impedance = std::polar(params.zth, params.alpha);
  return Phasor::from_complex(source + injection.to_complex() * impedance);
}

double voltage_magnitude_squared(const TheveninParams& params, double ij, double theta,
                                 MagnitudeForm form) noexcept {
  // Extended precision: near |V| ~ 0 the forms cancel terms of order Vth*Ij*Zth.
  using wide = long double;
  const wide v0 = params.vth;
  const wide drop = static_cast<wide>(ij) * params.zth;
  const wide phase = static_cast<wide>(theta) + params.alpha;
  switch (form) {
    case MagnitudeForm::kCosine:
      return static_cast<double>(v0 * v0 + drop * drop + 2.0L * v0 * drop * std::cos(phase));
    case MagnitudeForm::kShifted:
      return static_cast<double>((v0 + drop) * (v0 + drop) + 2.0L * v0 * drop * (std::cos(phase) - 1.0L));
    case MagnitudeForm::kHalfAngle: {
      const wide s = std::sin(0.5L * phase);
      return static_cast<double>((v0 + drop) * (v0 + drop) - 4.0L * v0 * drop * s * s);
    }
  }
  return 0.0;
}

}  // namespace thevenin
