#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace depthfill::cli {

enum ExitCode : int {
  kSuccess = 0,
  kIoFailure = 1,
  kValidationFailure = 2,
};

/// One `key = value` line of a config file, in file order.
using ConfigEntry = std::pair<std::string, std::string>;

/// Parses the flat config format: `key = value` per line, blank lines and
/// `#` comments ignored. Throws ContractViolation on malformed lines or
/// repeated keys. Key names are checked later against the subcommand.
std::vector<ConfigEntry> parse_config(std::string_view text);

/// Entry point behind the `depthfill` binary. Reports go to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace depthfill::cli
