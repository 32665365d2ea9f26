#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thevenin/simulation.hpp"

namespace thevenin {

struct SummaryOptions {
  double settle_window = 25.0;  ///< trailing seconds of each segment used for steady-state stats
  double band_alpha_deg = 1.0;
  double band_zth = 0.1;        ///< ohm
  double band_vth = 1.0;        ///< V
  double hold = 5.0;            ///< s an estimate must stay in band to count as settled
};

/// Statistics of one estimated quantity over one segment. Angles in degrees.
struct EstimateSummary {
  std::string name;  ///< alpha_esc, zth_rwls, vth_rwls, zth_kf, vth_kf
  double truth = 0.0;
  double band = 0.0;
  double steady_mean = 0.0;        ///< mean over the trailing window
  double steady_mean_error = 0.0;  ///< steady_mean − truth
  double steady_std = 0.0;
  /// Start of the first stretch of ≥ hold seconds inside truth ± band;
  /// empty when the estimate never settles within the segment.
  std::optional<double> settling_time;
  double trajectory_mean = 0.0;  ///< plain mean over the whole segment
};

struct SegmentSummary {
  double t_start = 0.0;
  double t_end = 0.0;
  double alpha_true_deg = 0.0;
  double zth_true = 0.0;
  double vth_true = 0.0;
  std::vector<EstimateSummary> estimates;

  [[nodiscard]] const EstimateSummary* find(const std::string& name) const;
};

struct SummaryMetrics {
  std::vector<SegmentSummary> segments;
};

/// Splits the record stream at changes of the truth columns and computes
/// per-segment statistics for every estimate present in the records.
/// Throws ConfigError if records are empty or the window exceeds a segment.
[[nodiscard]] SummaryMetrics summarize(std::span<const SampleRecord> records, const SummaryOptions& opts = {});

}  // namespace thevenin
