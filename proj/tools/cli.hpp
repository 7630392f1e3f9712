#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stein::cli {

enum ExitCode : int { kExitOk = 0, kExitComputation = 1, kExitUsage = 2 };

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Comma-separated items, each a number or an inclusive `start:stop:count`
/// range with count >= 2.
std::vector<double> parse_value_list(std::string_view text);

/// Comma-separated integers.
std::vector<long long> parse_int_list(std::string_view text);

struct SweepGrid {
  std::vector<long long> p_values;
  std::vector<double> theta_values;
  std::vector<double> c_values;
};

/// Runs one subcommand. argv[0] is the program name.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

} // namespace stein::cli
