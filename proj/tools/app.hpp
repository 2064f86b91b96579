#pragma once

// Command-line front end. `run` never throws; it reports through the exit code.

#include <string>
#include <vector>

namespace heuncross::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericalError = 3, kCompareFail = 4 };

int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);  // args[0] is the program name

}  // namespace heuncross::cli
