// Full-size acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.
#include <cstdlib>
#include <iostream>
#include <string>

#include "acceptance.hpp"

int main(int argc, char** argv) {
  stein::cli::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--fast")
      opts.fast = true;
    else if (arg == "--seed" && i + 1 < argc)
      opts.seed = std::strtoull(argv[++i], nullptr, 10);
  }
  const auto results = stein::cli::run_acceptance(opts, std::cout);
  return stein::cli::all_passed(results) ? EXIT_SUCCESS : EXIT_FAILURE;
}
