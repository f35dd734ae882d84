#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ctxkit::cli {

/// Exit codes shared by all commands.
enum ExitCode : int {
  ok = 0,
  failure = 1,      ///< the input is well formed but fails the requested check
  input_error = 2,  ///< unreadable or malformed input, bad arguments
  resource_limit = 3,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

/// Radians from "1.25", "pi", "-pi/4", "2pi/3" or "2*pi/3".
double parse_angle(const std::string& text);

}  // namespace ctxkit::cli
