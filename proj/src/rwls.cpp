#include "thevenin/rwls.hpp"

#include <cmath>

#include "thevenin/errors.hpp"

namespace thevenin {

void RwlsConfig::validate() const {
  if (!theta0.allFinite()) throw ConfigError("rwls.theta0", "must be finite");
  if (!(p0 > 0.0) || !std::isfinite(p0)) throw ConfigError("rwls.p0", "must be > 0");
  if (!(forgetting > 0.0 && forgetting <= 1.0)) throw ConfigError("rwls.forgetting", "must lie in (0, 1]");
  if (!(weight > 0.0) || !std::isfinite(weight)) throw ConfigError("rwls.weight", "must be > 0");
}

LsqState rwls_init(const RwlsConfig& cfg) {
  cfg.validate();
  LsqState s;
  s.theta = cfg.theta0;
  s.cov = cfg.p0 * Mat2::Identity();
  s.k = 0;
  return s;
}

LsqState rwls_update(const LsqState& state, const Regressor& r, const RwlsConfig& cfg) {
  const Vec2& h = r.h();
  const Vec2 ph = state.cov * h;
  const double denom = cfg.forgetting / cfg.weight + h.dot(ph);
  if (!(denom > 0.0) || !std::isfinite(denom)) {
    throw NumericalError("rwls_update: non-positive gain denominator");
  }
  const Vec2 gain = ph / denom;
  const double innovation = r.z() - h.dot(state.theta);

  LsqState next;
  next.theta = state.theta + gain * innovation;
  // P symmetric, so hᵀP = (P h)ᵀ.
  next.cov = symmetrized((state.cov - gain * ph.transpose()) / cfg.forgetting);
  next.k = state.k + 1;
  return next;
}

}  // namespace thevenin
