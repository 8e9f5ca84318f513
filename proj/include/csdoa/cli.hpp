// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace csdoa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Full command line minus the program name, e.g. {"spectrum", "--sources", "0"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "%.12g" with inf/nan spelled out; the CSV number format.
std::string format_number(double value);

}  // namespace csdoa::cli
