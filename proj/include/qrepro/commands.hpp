#pragma once

// Command-line front end. Exit codes are shared by every subcommand:
//   0  success / condition holds
//   1  usage or input error
//   2  analytic failure (condition violated, search did not converge, ...)

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qrepro::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitAnalyticFail = 2;

inline constexpr const char* kVersion = "0.1.0";

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "0.25pi" -> pi/4, "pi" -> pi, "-0.5pi", or plain radians ("0.3").
double parse_angle(std::string_view text);

/// Comma-separated list of parse_angle values.
std::vector<double> parse_angle_list(std::string_view text);

/// Rounds to 12 significant digits, the precision of every number in a report.
double round_sig12(double x);

} // namespace qrepro::cli
