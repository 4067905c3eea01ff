#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace parking::cli {

inline constexpr const char* tool_version = "1.0.0";

enum exit_code : int {
  exit_ok = 0,
  exit_failure = 1,
  exit_usage = 2,
  exit_convergence = 3,
  exit_resource = 4,
};

/// Runs one command line (args excludes the program name). Datasets go to
/// --out (with a <out>.manifest.json sidecar) or to `out` when --out is absent.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace parking::cli
