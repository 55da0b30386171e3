#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace tempodia {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitEmpty = 3;

/// Expands "start:stop:step" ranges (stop inclusive) and comma lists, e.g.
/// "0:0.9:0.1" or "250,500,1000" or "1,5:7:1". Throws std::invalid_argument.
std::vector<double> parse_range(std::string_view text);

/// Runs one command line (without the program name). Summaries go to `out`,
/// diagnostics to `err`; result files go to the --out directory.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace tempodia
