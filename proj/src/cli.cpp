#include "thevenin/cli.hpp"

#include <fstream>
#include <iomanip>
#include <locale>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "thevenin/config.hpp"
#include "thevenin/csv.hpp"
#include "thevenin/errors.hpp"

namespace thevenin {

namespace {

int cmd_simulate(const std::string& config_path, const std::string& out_path, std::optional<std::uint64_t> seed,
                 const std::optional<std::string>& estimators, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_config(config_path);
    if (seed) cfg.scenario.noise.seed = *seed;
    if (estimators) cfg.scenario.estimators = parse_estimator_list(*estimators);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }

  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open " << out_path << " for writing\n";
    return kExitIo;
  }
  std::vector<SampleRecord> records;
  records.reserve(cfg.scenario.step_count());
  write_csv_header(file);
  run_scenario(cfg.scenario, [&](const SampleRecord& r) {
    write_csv_row(file, r);
    records.push_back(r);
  });
  file.flush();
  if (!file) {
    err << "error: write to " << out_path << " failed\n";
    return kExitIo;
  }

  out << "wrote " << records.size() << " samples to " << out_path << " (seed " << cfg.scenario.noise.seed << ")\n";
  try {
    print_summary_table(out, summarize(records, cfg.output));
  } catch (const ConfigError& e) {
    err << "summary skipped: " << e.what() << '\n';
  }
  return kExitOk;
}

int cmd_summary(const std::string& csv_path, const SummaryOptions& opts, bool as_json, std::ostream& out,
                std::ostream& err) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) {
    err << "error: cannot open " << csv_path << '\n';
    return kExitIo;
  }
  try {
    const auto records = read_csv(in);
    const auto metrics = summarize(records, opts);
    if (as_json) print_summary_json(out, metrics);
    else print_summary_table(out, metrics);
  } catch (const std::exception& e) {
    err << "error: " << csv_path << ": " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace

void print_summary_table(std::ostream& os, const SummaryMetrics& m) {
  std::ostringstream ss;
  ss.imbue(std::locale::classic());
  ss << std::fixed;
  for (const SegmentSummary& seg : m.segments) {
    ss << std::setprecision(2) << "segment [" << seg.t_start << ", " << seg.t_end << ") s: alpha "
       << std::setprecision(3) << seg.alpha_true_deg << " deg, zth " << seg.zth_true << " ohm, vth " << seg.vth_true
       << " V\n";
    ss << "  " << std::left << std::setw(10) << "estimate" << std::right << std::setw(12) << "truth" << std::setw(12)
       << "mean" << std::setw(12) << "error" << std::setw(10) << "std" << std::setw(9) << "band" << std::setw(12)
       << "settled_at" << std::setw(12) << "traj_mean" << '\n';
    for (const EstimateSummary& e : seg.estimates) {
      ss << "  " << std::left << std::setw(10) << e.name << std::right << std::setprecision(4) << std::setw(12)
         << e.truth << std::setw(12) << e.steady_mean << std::setw(12) << e.steady_mean_error << std::setw(10)
         << e.steady_std << std::setw(9) << e.band << std::setw(12);
      if (e.settling_time) ss << std::setprecision(2) << *e.settling_time;
      else ss << "never";
      ss << std::setprecision(4) << std::setw(12) << e.trajectory_mean << '\n';
    }
  }
  os << ss.str();
}

void print_summary_json(std::ostream& os, const SummaryMetrics& m) {
  nlohmann::json doc;
  doc["segments"] = nlohmann::json::array();
  for (const SegmentSummary& seg : m.segments) {
    nlohmann::json s{{"t_start", seg.t_start},
                     {"t_end", seg.t_end},
                     {"alpha_true_deg", seg.alpha_true_deg},
                     {"zth_true", seg.zth_true},
                     {"vth_true", seg.vth_true},
                     {"estimates", nlohmann::json::array()}};
    for (const EstimateSummary& e : seg.estimates) {
      s["estimates"].push_back({{"name", e.name},
                                {"truth", e.truth},
                                {"band", e.band},
                                {"steady_mean", e.steady_mean},
                                {"steady_mean_error", e.steady_mean_error},
                                {"steady_std", e.steady_std},
                                {"settling_time", e.settling_time ? nlohmann::json(*e.settling_time) : nullptr},
                                {"trajectory_mean", e.trajectory_mean}});
    }
    doc["segments"].push_back(std::move(s));
  }
  os << doc.dump(2) << '\n';
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thevenin equivalent estimation by extremum seeking and least squares"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> estimators;
  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write the per-sample CSV");
  simulate->add_option("--config", config_path, "JSON scenario configuration")->required();
  simulate->add_option("--out", out_path, "CSV output path")->required();
  simulate->add_option("--seed", seed, "Override noise.seed");
  simulate->add_option("--estimators", estimators, "Comma-separated subset of esc,rwls,kalman");

  std::string csv_path;
  SummaryOptions opts;
  bool as_json = false;
  auto* summary = app.add_subcommand("summary", "Settling times and steady-state errors from a CSV");
  summary->add_option("--csv", csv_path, "CSV written by simulate")->required();
  summary->add_option("--band-alpha", opts.band_alpha_deg, "Settling band for alpha, degrees")
      ->check(CLI::PositiveNumber);
  summary->add_option("--band-z", opts.band_zth, "Settling band for Zth, ohms")->check(CLI::PositiveNumber);
  summary->add_option("--band-v", opts.band_vth, "Settling band for Vth, volts")->check(CLI::PositiveNumber);
  summary->add_option("--settle-window", opts.settle_window, "Trailing window for steady-state stats, seconds")
      ->check(CLI::PositiveNumber);
  summary->add_flag("--json", as_json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kExitConfig;
  }

  if (*simulate) return cmd_simulate(config_path, out_path, seed, estimators, out, err);
  return cmd_summary(csv_path, opts, as_json, out, err);
}

}  // namespace thevenin
