#include <iostream>

#include "lfvdw/cli.hpp"

int main(int argc, char** argv) {
  const auto outcome = lfvdw::cli::run({argv + 1, argv + argc});
  if (!outcome.written_to_file) {
    (outcome.exit_code >= 2 ? std::cerr : std::cout) << outcome.output;
  }
  return outcome.exit_code;
}
