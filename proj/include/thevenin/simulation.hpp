#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "thevenin/esc.hpp"
#include "thevenin/kalman.hpp"
#include "thevenin/phasor.hpp"
#include "thevenin/rwls.hpp"

namespace thevenin {

/// Grid parameters held over [t_start, t_end).
struct Segment {
  double t_start = 0.0;
  double t_end = 0.0;
  TheveninParams params;
};

struct EstimatorSet {
  bool esc = true;
  bool rwls = true;
  bool kalman = true;

  [[nodiscard]] static EstimatorSet none() noexcept { return {false, false, false}; }
  friend bool operator==(const EstimatorSet&, const EstimatorSet&) = default;
};

struct NoiseSettings {
  double sigma = 0.5;  ///< V
  std::uint64_t seed = 42;
};

struct Scenario {
  std::vector<Segment> segments;
  double base_current = 10.0;          ///< I0, A
  double mag_dither_amplitude = 1.0;   ///< a_I, A
  double mag_dither_freq = 2.0 * kPi * 3.7;  ///< rad/s
  double sample_dt = 0.01;             ///< s; also drives the ESC
  double duration = 0.0;               ///< s
  NoiseSettings noise;
  EscConfig esc;
  RwlsConfig rwls;
  KalmanConfig kalman;
  EstimatorSet estimators;

  /// Throws ConfigError naming the offending key.
  void validate() const;

  /// Number of samples: round(duration / sample_dt).
  [[nodiscard]] std::size_t step_count() const;

  /// Parameters active at time t. The last segment also covers t == t_end.
  [[nodiscard]] const Segment& segment_at(double t) const;
};

struct SampleRecord {
  double t = 0.0;
  double ij = 0.0;         ///< A
  double theta_cmd = 0.0;  ///< rad
  double v_true = 0.0;     ///< V
  double v_meas = 0.0;     ///< V
  std::optional<double> alpha_hat;  ///< rad
  std::optional<double> vth_hat_rwls;
  std::optional<double> zth_hat_rwls;
  std::optional<double> vth_hat_kf;
  std::optional<double> zth_hat_kf;
  double alpha_true = 0.0;  ///< rad
  double zth_true = 0.0;
  double vth_true = 0.0;

  friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

/// Fixed-step loop. Per step k at t = k·dt:
///   1. active segment parameters
///   2. Ij = I0 + a_I·sin(ω2·t)
///   3. θ_cmd from the ESC (θ_hat0 held when the ESC is disabled)
///   4. true node voltage, 5. noisy measurement
///   6. ESC step on v_meas²
///   7. RWLS update and KF predict+update on v_meas with the in-phase
///      current Ij·cos(θ_cmd − θ_hat)
///   8. emit the record
/// The sink is invoked once per step, in time order.
void run_scenario(const Scenario& s, const std::function<void(const SampleRecord&)>& sink);

[[nodiscard]] std::vector<SampleRecord> run_scenario(const Scenario& s);

}  // namespace thevenin
