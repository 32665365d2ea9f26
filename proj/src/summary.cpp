#include "thevenin/summary.hpp"

#include <cmath>

#include "thevenin/errors.hpp"

namespace thevenin {

namespace {

struct Channel {
  const char* name;
  std::optional<double> (*value)(const SampleRecord&);
  double (*truth)(const SampleRecord&);
  double SummaryOptions::*band;
};

const Channel kChannels[] = {
    {"alpha_esc",
     [](const SampleRecord& r) -> std::optional<double> {
       if (!r.alpha_hat) return std::nullopt;
       return rad_to_deg(*r.alpha_hat);
     },
     [](const SampleRecord& r) { return rad_to_deg(r.alpha_true); }, &SummaryOptions::band_alpha_deg},
    {"zth_rwls", [](const SampleRecord& r) { return r.zth_hat_rwls; }, [](const SampleRecord& r) { return r.zth_true; },
     &SummaryOptions::band_zth},
    {"vth_rwls", [](const SampleRecord& r) { return r.vth_hat_rwls; }, [](const SampleRecord& r) { return r.vth_true; },
     &SummaryOptions::band_vth},
    {"zth_kf", [](const SampleRecord& r) { return r.zth_hat_kf; }, [](const SampleRecord& r) { return r.zth_true; },
     &SummaryOptions::band_zth},
    {"vth_kf", [](const SampleRecord& r) { return r.vth_hat_kf; }, [](const SampleRecord& r) { return r.vth_true; },
     &SummaryOptions::band_vth},
};

bool same_truth(const SampleRecord& a, const SampleRecord& b) {
  return a.alpha_true == b.alpha_true && a.zth_true == b.zth_true && a.vth_true == b.vth_true;
}

EstimateSummary summarize_channel(const Channel& ch, std::span<const SampleRecord> seg, double t_end, double dt,
                                  const SummaryOptions& opts) {
  EstimateSummary out;
  out.name = ch.name;
  out.truth = ch.truth(seg.front());
  out.band = opts.*ch.band;

  // Window statistics run on errors so an estimate equal to truth gives exact zeros.
  double traj_sum = 0.0;
  double win_err_sum = 0.0;
  std::size_t win_n = 0;
  const double window_start = t_end - opts.settle_window - 1e-9;

  // Settled once `needed` consecutive samples sit inside the band.
  const auto needed = static_cast<std::size_t>(std::ceil(opts.hold / dt - 1e-9));
  std::size_t run = 0;
  double run_start = 0.0;

  for (const SampleRecord& r : seg) {
    const double v = ch.value(r).value();
    traj_sum += v;
    if (r.t >= window_start) {
      win_err_sum += v - out.truth;
      ++win_n;
    }
    if (!out.settling_time) {
      if (std::abs(v - out.truth) <= out.band) {
        if (run == 0) run_start = r.t;
        if (++run >= needed && dt > 0.0) out.settling_time = run_start;
      } else {
        run = 0;
      }
    }
  }

  out.trajectory_mean = traj_sum / static_cast<double>(seg.size());
  if (win_n > 0) {
    const double n = static_cast<double>(win_n);
    out.steady_mean_error = win_err_sum / n;
    out.steady_mean = out.truth + out.steady_mean_error;
    double acc = 0.0;
    for (const SampleRecord& r : seg) {
      if (r.t >= window_start) {
        const double d = ch.value(r).value() - out.truth - out.steady_mean_error;
        acc += d * d;
      }
    }
    out.steady_std = std::sqrt(acc / n);
  }
  return out;
}

}  // namespace

const EstimateSummary* SegmentSummary::find(const std::string& name) const {
  for (const EstimateSummary& e : estimates) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

SummaryMetrics summarize(std::span<const SampleRecord> records, const SummaryOptions& opts) {
  if (records.empty()) throw ConfigError("records", "no samples to summarize");
  if (!(opts.settle_window > 0.0)) throw ConfigError("settle_window", "must be > 0");

  const double dt = records.size() > 1 ? records[1].t - records[0].t : 0.0;

  SummaryMetrics out;
  std::size_t begin = 0;
  while (begin < records.size()) {
    std::size_t end = begin + 1;
    while (end < records.size() && same_truth(records[end], records[begin])) ++end;
    const auto seg = records.subspan(begin, end - begin);

    SegmentSummary s;
    s.t_start = seg.front().t;
    s.t_end = end < records.size() ? records[end].t : seg.back().t + dt;
    s.alpha_true_deg = rad_to_deg(seg.front().alpha_true);
    s.zth_true = seg.front().zth_true;
    s.vth_true = seg.front().vth_true;
    if (opts.settle_window > s.t_end - s.t_start + 1e-9) {
      throw ConfigError("settle_window", "exceeds the segment starting at t=" + std::to_string(s.t_start));
    }
    for (const Channel& ch : kChannels) {
      if (!ch.value(seg.front())) continue;
      s.estimates.push_back(summarize_channel(ch, seg, s.t_end, dt, opts));
    }
    out.segments.push_back(std::move(s));
    begin = end;
  }
  return out;
}

}  // namespace thevenin
