#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mingenus::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kSchema = 2,
  kPrecondition = 3,
  kBudget = 4,
  kOracleMismatch = 5,
  kBoxTooSmall = 6,
};

/// Budget overrides read from MINGENUS_MAX_NODES and MINGENUS_MAX_ABS_PAIRING.
struct Environment {
  std::optional<std::string> max_nodes;
  std::optional<std::string> max_abs_pairing;

  static Environment from_process();
};

/// Runs one command line (without the program name). The report goes to
/// `out` in one write; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const Environment& env);

}  // namespace mingenus::cli
