#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tucker/tucker_model.hpp"

namespace tucker::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// Entry point of the `tucker` tool: gen, decompose, verify, sweep.
/// Diagnostics go to `err` as a single line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Argument parsers, exposed for tests. They throw tucker::Error (parameter error).
MultilinearRank parse_rank(const std::string& text);
std::vector<Index> parse_mode_order(const std::string& text);  // 1-based in, 0-based out
std::pair<int, int> parse_order_range(const std::string& text);  // "lo..hi"
std::vector<double> parse_epsilon_list(const std::string& text);  // sorted ascending

}  // namespace tucker::cli
