#include "thevenin/csv.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>

namespace thevenin {

namespace {

constexpr std::size_t kColumns = 13;

void append(std::string& line, double v) { line += format_double(v); }

void append(std::string& line, const std::optional<double>& v) {
  if (v) line += format_double(*v);
}

double parse_number(std::string_view field, std::size_t line_no) {
  double v = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || field.empty()) {
    throw CsvError("line " + std::to_string(line_no) + ": bad number '" + std::string(field) + "'");
  }
  return v;
}

std::optional<double> parse_optional(std::string_view field, std::size_t line_no) {
  if (field.empty()) return std::nullopt;
  return parse_number(field, line_no);
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), ptr};
}

std::string format_record(const SampleRecord& r) {
  std::string line;
  line.reserve(192);
  append(line, r.t);
  line += ',';
  append(line, r.ij);
  line += ',';
  append(line, r.theta_cmd);
  line += ',';
  append(line, r.v_true);
  line += ',';
  append(line, r.v_meas);
  line += ',';
  if (r.alpha_hat) append(line, rad_to_deg(*r.alpha_hat));
  line += ',';
  append(line, r.vth_hat_rwls);
  line += ',';
  append(line, r.zth_hat_rwls);
  line += ',';
  append(line, r.vth_hat_kf);
  line += ',';
  append(line, r.zth_hat_kf);
  line += ',';
  append(line, rad_to_deg(r.alpha_true));
  line += ',';
  append(line, r.zth_true);
  line += ',';
  append(line, r.vth_true);
  return line;
}

void write_csv_header(std::ostream& os) { os << kCsvHeader << '\n'; }

void write_csv_row(std::ostream& os, const SampleRecord& r) { os << format_record(r) << '\n'; }

std::vector<SampleRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw CsvError("empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw CsvError("unexpected header");

  std::vector<SampleRecord> out;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::array<std::string_view, kColumns> f{};
    std::size_t n = 0;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      if (n == kColumns) throw CsvError("line " + std::to_string(line_no) + ": too many fields");
      f[n++] = rest.substr(0, comma);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (n != kColumns) throw CsvError("line " + std::to_string(line_no) + ": expected 13 fields");

    SampleRecord r;
    r.t = parse_number(f[0], line_no);
    r.ij = parse_number(f[1], line_no);
    r.theta_cmd = parse_number(f[2], line_no);
    r.v_true = parse_number(f[3], line_no);
    r.v_meas = parse_number(f[4], line_no);
    if (auto a = parse_optional(f[5], line_no)) r.alpha_hat = deg_to_rad(*a);
    r.vth_hat_rwls = parse_optional(f[6], line_no);
    r.zth_hat_rwls = parse_optional(f[7], line_no);
    r.vth_hat_kf = parse_optional(f[8], line_no);
    r.zth_hat_kf = parse_optional(f[9], line_no);
    r.alpha_true = deg_to_rad(parse_number(f[10], line_no));
    r.zth_true = parse_number(f[11], line_no);
    r.vth_true = parse_number(f[12], line_no);
    out.push_back(r);
  }
  if (out.empty()) throw CsvError("no data rows");
  return out;
}

}  // namespace thevenin
