#include "thevenin/simulation.hpp"

#include <cmath>
#include <string>

#include "thevenin/errors.hpp"
#include "thevenin/noise.hpp"

namespace thevenin {

namespace {

constexpr double kTimeTolerance = 1e-9;

EscConfig esc_for(const Scenario& s) {
  EscConfig cfg = s.esc;
  cfg.sample_dt = s.sample_dt;
  return cfg;
}

}  // namespace

void Scenario::validate() const {
  if (!(sample_dt > 0.0) || !std::isfinite(sample_dt)) throw ConfigError("scenario.sample_dt", "must be > 0");
  if (!(duration > 0.0) || !std::isfinite(duration)) throw ConfigError("scenario.duration", "must be > 0");
  if (step_count() == 0) throw ConfigError("scenario.duration", "shorter than one sample");

  if (segments.empty()) throw ConfigError("scenario.segments", "at least one segment is required");
  double expected_start = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const std::string key = "scenario.segments[" + std::to_string(i) + "].";
    const Segment& seg = segments[i];
    if (std::abs(seg.t_start - expected_start) > kTimeTolerance) {
      throw ConfigError(key + "t_start", i == 0 ? "first segment must start at 0"
                                                : "segments must be contiguous (t_start == previous t_end)");
    }
    if (!(seg.t_end > seg.t_start)) throw ConfigError(key + "t_end", "must be greater than t_start");
    seg.params.validate(key);
    expected_start = seg.t_end;
  }
  if (std::abs(segments.back().t_end - duration) > kTimeTolerance) {
    throw ConfigError("scenario.duration", "segments must cover [0, duration]");
  }

  if (!(base_current > 0.0) || !std::isfinite(base_current)) {
    throw ConfigError("scenario.base_current", "must be > 0");
  }
  if (!(mag_dither_amplitude >= 0.0 && mag_dither_amplitude < base_current)) {
    throw ConfigError("scenario.mag_dither_amplitude", "must satisfy 0 <= a_I < base_current");
  }
  if (!(mag_dither_freq > 0.0) || !std::isfinite(mag_dither_freq)) {
    throw ConfigError("scenario.mag_dither_freq_hz", "must be > 0");
  }
  if (!(mag_dither_freq * sample_dt < kPi)) {
    throw ConfigError("scenario.mag_dither_freq_hz", "must be below Nyquist for scenario.sample_dt");
  }
  const double ratio = mag_dither_freq / esc.dither_freq;
  const double nearest = std::round(ratio);
  if (nearest >= 1.0 && std::abs(ratio - nearest) < 1e-9) {
    throw ConfigError("scenario.mag_dither_freq_hz",
                      "must differ from, and not be an integer multiple of, esc.dither_freq_hz");
  }

  if (!(noise.sigma >= 0.0) || !std::isfinite(noise.sigma)) throw ConfigError("noise.sigma", "must be >= 0");
  esc_for(*this).validate();
  rwls.validate();
  kalman.validate();
}

std::size_t Scenario::step_count() const {
  const double n = std::round(duration / sample_dt);
  return n > 0.0 ? static_cast<std::size_t>(n) : 0;
}

const Segment& Scenario::segment_at(double t) const {
  for (const Segment& seg : segments) {
    if (t < seg.t_end) return seg;
  }
  return segments.back();
}

void run_scenario(const Scenario& s, const std::function<void(const SampleRecord&)>& sink) {
  s.validate();

  const EscConfig esc_cfg = esc_for(s);
  NoiseChannel channel(s.noise.sigma, s.noise.seed);
  EscState esc = esc_init(esc_cfg);
  LsqState rwls = rwls_init(s.rwls);
  KalmanState kf = kf_init(s.kalman);

  const std::size_t steps = s.step_count();
  for (std::size_t k = 0; k < steps; ++k) {
    SampleRecord rec;
    rec.t = static_cast<double>(k) * s.sample_dt;

    const TheveninParams& truth = s.segment_at(rec.t).params;
    rec.alpha_true = truth.alpha;
    rec.zth_true = truth.zth;
    rec.vth_true = truth.vth;

    rec.ij = s.base_current + s.mag_dither_amplitude * std::sin(s.mag_dither_freq * rec.t);
    rec.theta_cmd = s.estimators.esc ? esc_command(esc, esc_cfg) : esc.theta_hat;
    rec.v_true = node_voltage(truth, Phasor(rec.ij, rec.theta_cmd)).magnitude();
    rec.v_meas = measure(rec.v_true, channel);

    // Current component along the angle the ESC currently believes is the
    // extremum; equals ij whenever no angle dither is applied.
    const double in_phase_current = rec.ij * std::cos(rec.theta_cmd - esc.theta_hat);

    if (s.estimators.esc) {
      esc = esc_step(esc, esc_cfg, rec.v_meas * rec.v_meas);
      rec.alpha_hat = alpha_estimate(esc);
    }
    const Regressor regressor(in_phase_current, rec.v_meas);
    if (s.estimators.rwls) {
      rwls = rwls_update(rwls, regressor, s.rwls);
      rec.vth_hat_rwls = rwls.theta(0);
      rec.zth_hat_rwls = rwls.theta(1);
    }
    if (s.estimators.kalman) {
      kf = kf_update(kf_predict(kf, s.kalman), s.kalman, regressor.h(), regressor.z());
      const TheveninEstimate est = kf_estimate(kf);
      rec.vth_hat_kf = est.vth;
      rec.zth_hat_kf = est.zth;
    }
    sink(rec);
  }
}

std::vector<SampleRecord> run_scenario(const Scenario& s) {
  std::vector<SampleRecord> out;
  out.reserve(s.step_count());
  run_scenario(s, [&out](const SampleRecord& r) { out.push_back(r); });
  return out;
}

}  // namespace thevenin
