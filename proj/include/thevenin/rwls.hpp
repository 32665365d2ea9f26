#pragma once

#include <cstdint>

#include "thevenin/linalg.hpp"

namespace thevenin {

/// One observation of the affine voltage model z = Vth + Zth·i + v.
/// The regressor is h = [1, i]; the leading 1 carries the Thevenin voltage.
class Regressor {
 public:
  Regressor(double current, double z) noexcept : h_(1.0, current), z_(z) {}

  [[nodiscard]] const Vec2& h() const noexcept { return h_; }
  [[nodiscard]] double current() const noexcept { return h_(1); }
  [[nodiscard]] double z() const noexcept { return z_; }

 private:
  Vec2 h_;
  double z_;
};

/// Parameter estimate [Vth, Zth] with its covariance. Shared by the
/// least-squares and Kalman estimators.
struct LsqState {
  Vec2 theta = Vec2::Zero();
  Mat2 cov = Mat2::Identity();
  std::uint64_t k = 0;
};

struct RwlsConfig {
  Vec2 theta0 = Vec2::Zero();
  double p0 = 1e6;
  double forgetting = 0.995;  ///< λ in (0, 1]; 1 gives ordinary RLS
  double weight = 1.0;        ///< per-sample measurement weight w

  void validate() const;
};

/// θ = θ0, P = p0·I, k = 0. Throws ConfigError on an invalid config.
[[nodiscard]] LsqState rwls_init(const RwlsConfig& cfg);

/// Covariance-form recursive weighted least squares with exponential
/// forgetting:
///   e = z − hᵀθ
///   K = P·h / (λ/w + hᵀ·P·h)
///   θ ← θ + K·e
///   P ← (P − K·hᵀ·P) / λ, symmetrized
[[nodiscard]] LsqState rwls_update(const LsqState& state, const Regressor& r, const RwlsConfig& cfg);

/// hᵀθ.
[[nodiscard]] inline double rwls_predict(const LsqState& state, const Vec2& h) { return h.dot(state.theta); }

}  // namespace thevenin
