#pragma once

#include <iosfwd>

namespace frechet::cli {

/// Process exit codes.
enum ExitCode : int {
  ok = 0,
  internal_error = 1,
  input_error = 2,
  convergence_error = 3,
  check_failed = 4,
};

/// Parses argv and runs one subcommand (barycenter, gm, bounds, experiment,
/// check). Results go to `out` unless an output file is given; diagnostics go
/// to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace frechet::cli
