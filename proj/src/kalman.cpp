#include "thevenin/kalman.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "thevenin/errors.hpp"

namespace thevenin {

void KalmanConfig::validate() const {
  if (!F.allFinite()) throw ConfigError("kalman.F", "must be finite");
  if (!Q.allFinite() || asymmetry(Q) > 1e-12) throw ConfigError("kalman.Q", "must be symmetric");
  if (Eigen::SelfAdjointEigenSolver<Mat2>(Q, Eigen::EigenvaluesOnly).eigenvalues().minCoeff() < 0.0) {
    throw ConfigError("kalman.Q", "must be positive semi-definite");
  }
  if (!(R > 0.0) || !std::isfinite(R)) throw ConfigError("kalman.R", "must be > 0");
  if (!x0.allFinite()) throw ConfigError("kalman.x0", "must be finite");
  if (!P0.allFinite() || asymmetry(P0) > 1e-12) throw ConfigError("kalman.P0", "must be symmetric");
  if (!(Eigen::SelfAdjointEigenSolver<Mat2>(P0, Eigen::EigenvaluesOnly).eigenvalues().minCoeff() > 0.0)) {
    throw ConfigError("kalman.P0", "must be positive definite");
  }
}

KalmanState kf_init(const KalmanConfig& cfg) {
  cfg.validate();
  return {cfg.x0, cfg.P0, 0};
}

KalmanState kf_predict(const KalmanState& state, const KalmanConfig& cfg, const Vec2& u, const Mat2& B) {
  KalmanState next;
  next.x = cfg.F * state.x + B * u;
  next.P = symmetrized(cfg.F * state.P * cfg.F.transpose() + cfg.Q);
  next.k = state.k;
  return next;
}

KalmanState kf_update(const KalmanState& state, const KalmanConfig& cfg, const Vec2& h, double z) {
  const Vec2 ph = state.P * h;
  const double s = h.dot(ph) + cfg.R;
  if (!(s > 0.0) || !std::isfinite(s)) throw NumericalError("kf_update: non-positive innovation variance");
  const Vec2 gain = ph / s;
  const double innovation = z - h.dot(state.x);

  KalmanState next;
  next.x = state.x + gain * innovation;
  // (I - K h^T) P with h^T P = (P h)^T for symmetric P.
  next.P = symmetrized(state.P - gain * ph.transpose());
  next.k = state.k + 1;
  return next;
}

}  // namespace thevenin
