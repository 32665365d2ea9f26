#include "thevenin/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "thevenin/errors.hpp"

namespace thevenin {

namespace {

using nlohmann::json;

/// View over one JSON object that remembers which keys were consumed.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
  }

  ~Section() = default;
  Section(const Section&) = delete;
  Section& operator=(const Section&) = delete;

  [[nodiscard]] std::string key_path(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  [[nodiscard]] const json* get(std::string_view key) {
    const std::string k(key);
    seen_.insert(k);
    const auto it = j_.find(k);
    return it == j_.end() ? nullptr : &*it;
  }

  void number(std::string_view key, double& out) {
    if (const json* v = get(key)) out = as_number(*v, key_path(key));
  }

  void vec2(std::string_view key, Vec2& out) {
    if (const json* v = get(key)) out = as_vec2(*v, key_path(key));
  }

  void mat2(std::string_view key, Mat2& out) {
    if (const json* v = get(key)) {
      const std::string p = key_path(key);
      if (!v->is_array() || v->size() != 2) throw ConfigError(p, "expected a 2x2 array of numbers");
      for (int i = 0; i < 2; ++i) out.row(i) = as_vec2((*v)[i], p + "[" + std::to_string(i) + "]").transpose();
    }
  }

  /// Rejects keys that no reader asked for.
  void finish() const {
    for (const auto& [k, _] : j_.items()) {
      if (!seen_.contains(k)) throw ConfigError(key_path(k), "unknown key");
    }
  }

  static double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path, "expected a number");
    return v.get<double>();
  }

  static Vec2 as_vec2(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2) throw ConfigError(path, "expected an array of 2 numbers");
    return {as_number(v[0], path + "[0]"), as_number(v[1], path + "[1]")};
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

const json kEmpty = json::object();

const json& section_or_empty(Section& root, std::string_view key) {
  const json* v = root.get(key);
  return v ? *v : kEmpty;
}

Segment parse_segment(const json& j, const std::string& path) {
  Section s(j, path);
  Segment seg;
  double alpha_deg = 0.0;
  for (const char* required : {"t_start", "t_end", "vth", "zth", "alpha_deg"}) {
    if (!j.contains(required)) throw ConfigError(s.key_path(required), "missing");
  }
  s.number("t_start", seg.t_start);
  s.number("t_end", seg.t_end);
  s.number("vth", seg.params.vth);
  s.number("zth", seg.params.zth);
  s.number("alpha_deg", alpha_deg);
  seg.params.alpha = deg_to_rad(alpha_deg);
  s.finish();
  return seg;
}

EstimatorSet parse_estimators(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of estimator names");
  EstimatorSet set = EstimatorSet::none();
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_string()) throw ConfigError(p, "expected a string");
    const auto name = j[i].get<std::string>();
    if (name == "esc") set.esc = true;
    else if (name == "rwls") set.rwls = true;
    else if (name == "kalman") set.kalman = true;
    else throw ConfigError(p, "unknown estimator '" + name + "' (expected esc, rwls or kalman)");
  }
  return set;
}

void parse_scenario(const json& j, Scenario& sc) {
  Section s(j, "scenario");
  const json* segs = s.get("segments");
  if (!segs) throw ConfigError("scenario.segments", "missing");
  if (!segs->is_array()) throw ConfigError("scenario.segments", "expected an array");
  for (std::size_t i = 0; i < segs->size(); ++i) {
    sc.segments.push_back(parse_segment((*segs)[i], "scenario.segments[" + std::to_string(i) + "]"));
  }
  s.number("base_current", sc.base_current);
  s.number("mag_dither_amplitude", sc.mag_dither_amplitude);
  double f2_hz = sc.mag_dither_freq / (2.0 * kPi);
  s.number("mag_dither_freq_hz", f2_hz);
  sc.mag_dither_freq = 2.0 * kPi * f2_hz;
  s.number("sample_dt", sc.sample_dt);
  sc.duration = sc.segments.empty() ? 0.0 : sc.segments.back().t_end;
  s.number("duration", sc.duration);
  if (const json* est = s.get("estimators")) sc.estimators = parse_estimators(*est, "scenario.estimators");
  s.finish();
}

void parse_esc(const json& j, EscConfig& esc) {
  Section s(j, "esc");
  s.number("dither_amplitude_rad", esc.dither_amplitude);
  double f1_hz = esc.dither_freq / (2.0 * kPi);
  s.number("dither_freq_hz", f1_hz);
  esc.dither_freq = 2.0 * kPi * f1_hz;
  double fh_hz = esc.hpf_cutoff / (2.0 * kPi);
  s.number("hpf_cutoff_hz", fh_hz);
  esc.hpf_cutoff = 2.0 * kPi * fh_hz;
  s.number("gain", esc.gain);
  s.number("theta_hat0_rad", esc.theta_hat0);
  s.finish();
}

void parse_rwls(const json& j, RwlsConfig& rwls) {
  Section s(j, "rwls");
  s.vec2("theta0", rwls.theta0);
  s.number("p0", rwls.p0);
  s.number("forgetting", rwls.forgetting);
  s.number("weight", rwls.weight);
  s.finish();
}

void parse_kalman(const json& j, KalmanConfig& kf) {
  Section s(j, "kalman");
  s.mat2("F", kf.F);
  s.mat2("Q", kf.Q);
  s.number("R", kf.R);
  s.vec2("x0", kf.x0);
  s.mat2("P0", kf.P0);
  s.finish();
}

void parse_noise(const json& j, NoiseSettings& noise) {
  Section s(j, "noise");
  s.number("sigma", noise.sigma);
  if (const json* seed = s.get("seed")) {
    if (!seed->is_number_unsigned()) throw ConfigError("noise.seed", "expected a non-negative integer");
    noise.seed = seed->get<std::uint64_t>();
  }
  s.finish();
}

void parse_output(const json& j, SummaryOptions& out) {
  Section s(j, "output");
  s.number("settle_window", out.settle_window);
  s.number("band_alpha_deg", out.band_alpha_deg);
  s.number("band_z", out.band_zth);
  s.number("band_v", out.band_vth);
  s.number("hold", out.hold);
  s.finish();
  if (!(out.settle_window > 0.0)) throw ConfigError("output.settle_window", "must be > 0");
  if (!(out.hold > 0.0)) throw ConfigError("output.hold", "must be > 0");
  if (!(out.band_alpha_deg > 0.0)) throw ConfigError("output.band_alpha_deg", "must be > 0");
  if (!(out.band_zth > 0.0)) throw ConfigError("output.band_z", "must be > 0");
  if (!(out.band_vth > 0.0)) throw ConfigError("output.band_v", "must be > 0");
}

}  // namespace

RunConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }

  RunConfig cfg;
  Section root(doc, "");
  const json* scenario = root.get("scenario");
  if (!scenario) throw ConfigError("scenario", "missing");
  parse_scenario(*scenario, cfg.scenario);
  parse_esc(section_or_empty(root, "esc"), cfg.scenario.esc);
  parse_rwls(section_or_empty(root, "rwls"), cfg.scenario.rwls);
  parse_kalman(section_or_empty(root, "kalman"), cfg.scenario.kalman);
  parse_noise(section_or_empty(root, "noise"), cfg.scenario.noise);
  parse_output(section_or_empty(root, "output"), cfg.output);
  root.finish();

  cfg.scenario.esc.sample_dt = cfg.scenario.sample_dt;
  cfg.scenario.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

EstimatorSet parse_estimator_list(std::string_view csv_list) {
  json names = json::array();
  std::size_t start = 0;
  while (start <= csv_list.size()) {
    const auto comma = csv_list.find(',', start);
    const auto item = csv_list.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (!item.empty()) names.push_back(std::string(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parse_estimators(names, "--estimators");
}

}  // namespace thevenin
