#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace girl::cli {

inline constexpr std::string_view kReportSchema = "girl-report/1";

enum ExitCode : int {
    kOk = 0,          // success, sat, all constraints hold
    kUnsat = 1,       // unsat, or check found a violated constraint
    kInvalid = 2,     // validation errors
    kParseError = 3,  // lexical, syntax or interchange errors
    kInconclusive = 4, // search budget exhausted (S1)
    kUsage = 5,       // I/O or usage error
};

/// Runs the command line `args` (without the program name). Machine output
/// goes to `out`, human messages to `err`. Reads GIRL_MAX_CANDIDATES.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace girl::cli
