#pragma once

#include <cstdint>

#include "thevenin/linalg.hpp"

namespace thevenin {

/// Linear-Gaussian model for a slowly varying parameter state x = [Vth, Zth]:
///   x_k = F·x_{k−1} + B·u + w,  w ~ N(0, Q)
///   z_k = hᵀ·x_k + n,           n ~ N(0, R)
struct KalmanConfig {
  Mat2 F = Mat2::Identity();
  Mat2 Q = Vec2(1e-4, 1e-6).asDiagonal();
  double R = 0.25;  ///< V²
  Vec2 x0 = Vec2::Zero();
  Mat2 P0 = 1e6 * Mat2::Identity();

  void validate() const;
};

struct KalmanState {
  Vec2 x = Vec2::Zero();
  Mat2 P = Mat2::Identity();
  std::uint64_t k = 0;
};

struct TheveninEstimate {
  double vth = 0.0;  ///< V
  double zth = 0.0;  ///< ohm
};

[[nodiscard]] KalmanState kf_init(const KalmanConfig& cfg);

/// x ← F·x + B·u,  P ← F·P·Fᵀ + Q.
[[nodiscard]] KalmanState kf_predict(const KalmanState& state, const KalmanConfig& cfg,
                                     const Vec2& u = Vec2::Zero(), const Mat2& B = Mat2::Zero());

/// Innovation y = z − hᵀx, S = hᵀPh + R, K = Ph/S, x ← x + K·y,
/// P ← (I − K·hᵀ)·P, symmetrized. Throws NumericalError if S ≤ 0.
[[nodiscard]] KalmanState kf_update(const KalmanState& state, const KalmanConfig& cfg, const Vec2& h, double z);

[[nodiscard]] inline TheveninEstimate kf_estimate(const KalmanState& state) noexcept {
  return {state.x(0), state.x(1)};
}

}  // namespace thevenin
