#pragma once

// Command-line front end as a library: `run` parses the arguments, executes
// one command and returns the exit code together with the rendered output,
// so the executable and the tests share one code path.

#include <string>
#include <vector>

namespace lfvdw::cli {

struct Outcome {
  int exit_code = 0;
  std::string output;  // CSV or JSON text; error JSON on failure
  bool written_to_file = false;
};

/// Exit codes: 0 success, 1 a verification command found a mismatch,
/// 2 invalid input or usage, 3 numerical failure.
Outcome run(const std::vector<std::string>& args);

}  // namespace lfvdw::cli
