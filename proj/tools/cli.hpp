#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace eocos::cli {

// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kValidationError = 1,
  kParseError = 2,
  kIoError = 3,
  kInternalError = 4,
};

struct Environment {
  std::optional<std::string> config_path;  // EOCOS_CONFIG
};

// Runs one invocation. `args[0]` is the program name. Payload goes to `out`,
// diagnostics to `err`; `in` backs the `-` input path.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
            const Environment& env = {});

}  // namespace eocos::cli
