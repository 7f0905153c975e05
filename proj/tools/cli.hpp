#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace flagcone::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kConfigurationError = 2, kInternalError = 3 };

/// "0.3", "-1.5e-2", "0.3+0.2i", "0.1-2i", "2i", "-i". ConfigurationError otherwise.
std::complex<double> parse_complex(const std::string& text);
/// Comma-separated parse_complex; the empty string is the empty list.
std::vector<std::complex<double>> parse_complex_list(const std::string& text);

/// Runs one command line (without the program name); returns the exit code.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace flagcone::cli
