#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "thevenin/simulation.hpp"

namespace thevenin {

inline constexpr std::string_view kCsvHeader =
    "t,ij,theta_cmd,v_true,v_meas,alpha_hat_deg,vth_rwls,zth_rwls,vth_kf,zth_kf,alpha_true_deg,zth_true,vth_true";

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal string that parses back to exactly `v`. Independent of
/// the global locale.
[[nodiscard]] std::string format_double(double v);

/// One CSV row without the trailing newline. Missing estimates are empty
/// fields; angles in the *_deg columns are converted to degrees.
[[nodiscard]] std::string format_record(const SampleRecord& r);

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const SampleRecord& r);

/// Parses a stream written by write_csv_*. Throws CsvError on an empty
/// stream, a wrong header, a short row or an unparseable field.
[[nodiscard]] std::vector<SampleRecord> read_csv(std::istream& is);

}  // namespace thevenin
