#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace triloop {

// Exit codes shared by every mode.
inline constexpr int kExitTerminates = 0; // also: success for non-decide modes
inline constexpr int kExitNonTerminates = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNotTriangular = 3;
inline constexpr int kExitInternalError = 4;

struct RunConfig {
  std::string mode = "decide";   // decide|chain|closed-form|formula|smtlib|simulate
  std::string format = "human";  // human|structured-records
  std::optional<std::string> input_path;  // absent or "-": stdin
  std::optional<std::string> solver_cmd;  // external SMT cross-check
  std::uint64_t horizon = 10000;
  std::optional<std::string> init;        // "v1,v2,..." for simulate
  std::optional<std::string> output_path; // absent: stdout
};

// Executes one configured run; all output goes to out (or the configured
// file), diagnostics to err.  Returns one of the exit codes above.
int run(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

// Parses command-line arguments (without argv[0]) and runs.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

} // namespace triloop
