#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "maxenergy/bodies.hpp"

namespace maxenergy::cli {

inline constexpr std::string_view kToolName = "maxenergy";
inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kSeedEnv = "MAXENERGY_SEED";
inline constexpr std::uint64_t kDefaultSeed = 1;

enum ExitCode : int {
    kOk = 0,
    kUnexpected = 1,
    kValidation = 2,
    kSolver = 3,
    kRadiusTooSmall = 4,
};

/// Parses a body given either as a JSON object or as shorthand:
/// `interval`, `ball:N`, `lq:N:Q` (Q may be `inf`), `ellipsoid:a1,a2,...`.
BodySpec parse_body(const std::string& text);

/// Runs one command. `args` excludes the program name. Records go to `out`
/// (or the --output file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace maxenergy::cli
