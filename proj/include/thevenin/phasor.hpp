#pragma once

#include <complex>
#include <string>

namespace thevenin {

inline constexpr double kPi = 3.14159265358979323846;

[[nodiscard]] constexpr double deg_to_rad(double deg) noexcept { return deg * kPi / 180.0; }
[[nodiscard]] constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / kPi; }

/// Wraps an angle into (-pi, pi].
[[nodiscard]] double normalize_angle(double rad) noexcept;

/// Sinusoidal steady-state quantity in polar form. Magnitude is non-negative
/// and the angle always lies in (-pi, pi]; a negative magnitude passed to the
/// constructor is folded into the angle.
class Phasor {
 public:
  Phasor() = default;
  Phasor(double magnitude, double angle_rad) noexcept;

  [[nodiscard]] static Phasor from_complex(std::complex<double> z) noexcept;

  [[nodiscard]] double magnitude() const noexcept { return magnitude_; }
  [[nodiscard]] double angle() const noexcept { return angle_; }
  [[nodiscard]] std::complex<double> to_complex() const noexcept;

  friend Phasor operator+(const Phasor& a, const Phasor& b) noexcept;
  friend Phasor operator-(const Phasor& a, const Phasor& b) noexcept;
  friend Phasor operator*(const Phasor& a, const Phasor& b) noexcept;

 private:
  double magnitude_ = 0.0;
  double angle_ = 0.0;
};

/// Thevenin equivalent seen from a node: source magnitude (V), impedance
/// magnitude (ohm) and impedance angle (rad, strictly inside (-pi/2, pi/2)).
struct TheveninParams {
  double vth = 0.0;
  double zth = 0.0;
  double alpha = 0.0;

  /// Throws ConfigError naming `key_prefix` + field on violation.
  void validate(const std::string& key_prefix = {}) const;

  friend bool operator==(const TheveninParams&, const TheveninParams&) = default;
};

/// Node voltage with a current source injecting `injection` at the node:
/// V = Vth∠0 + I∠θ · Zth∠α.
[[nodiscard]] Phasor node_voltage(const TheveninParams& params, const Phasor& injection) noexcept;

/// Closed forms of |V|² as a function of injected magnitude and angle.
enum class MagnitudeForm {
  kCosine,      ///< Vth² + (IZ)² + 2·Vth·IZ·cos(θ+α)
  kShifted,     ///< (Vth + IZ)² + 2·Vth·IZ·(cos(θ+α) − 1)
  kHalfAngle,   ///< (Vth + IZ)² − 4·Vth·IZ·sin²((θ+α)/2)
};

[[nodiscard]] double voltage_magnitude_squared(const TheveninParams& params, double ij, double theta,
                                               MagnitudeForm form) noexcept;

}  // namespace thevenin
