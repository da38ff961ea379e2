#pragma once

#include "perp/pf.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace perp::cli {

enum ExitCode : int
{
  success        = 0,
  check_failed   = 2,
  usage_error    = 3,
  guard_exceeded = 4,
};

/// Runs one command. `args` excludes the program name. The report goes to
/// `out` (JSON with --json, text otherwise); diagnostics go to `err`.
int run_command(std::vector<std::string> args, std::ostream &out, std::ostream &err);

int run_command(int argc, char const *const *argv);

/// Exit code of theorem-verify for the given verdicts.
int theorem_exit_code(TheoremReport const &theorem,
                      LemmaF8Report const &f8,
                      PhiIsoReport const  &phi,
                      CogenerationReport const &cogeneration);

} // namespace perp::cli
