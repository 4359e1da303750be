#pragma once

// Verb-dispatched command line front end.
//
//   jetforge jet at|compose|invert
//   jetforge group mul|inv|to-alg|from-alg
//   jetforge prolong algebra|group
//   jetforge bundle glue|cocycle|reduce
//   jetforge singularity analyze|compare
//
// Exit status: 0 success, 1 mathematical failure (diagnostic JSON on
// stdout), 2 usage error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jetforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMath = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Command {
  std::string verb;
  std::string subverb;

  // input files
  std::string a, b, in, map, atlas, group, field, element;
  std::string out;

  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<double>> point;  // --point, or --seed for singularity analyze
  std::optional<std::vector<double>> seed_a, seed_b;
  int samples = 9;
  bool json = false;

  std::string builtin;
  int builtin_m = 0;
  std::string from, to;
  std::vector<std::string> charts;

  bool help = false;
  std::string help_text;
};

/// argv[0] is the program name. Throws UsageError.
Command parse_args(const std::vector<std::string>& argv);

/// Tolerance to use: --tol, else JETFORGE_TOL, else fallback.
double effective_tol(const Command& cmd, double fallback);

int run(const Command& cmd, std::ostream& out, std::ostream& err);

/// parse_args + run with the exit-code contract applied to parse failures.
int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace jetforge::cli
