#pragma once

#include <iosfwd>

#include "thevenin/summary.hpp"

namespace thevenin {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitConfig = 2;

/// Entry point shared by the executable and the tests.
///   simulate --config <path> --out <path> [--seed <u64>] [--estimators esc,rwls,kalman]
///   summary  --csv <path> [--band-alpha <deg>] [--band-z <ohm>] [--band-v <volt>]
///            [--settle-window <s>] [--json]
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

void print_summary_table(std::ostream& os, const SummaryMetrics& m);
void print_summary_json(std::ostream& os, const SummaryMetrics& m);

}  // namespace thevenin
