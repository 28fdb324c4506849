#pragma once

#include <string>
#include <vector>

namespace psearch {

/*
  Command-line front end (subcommands: solve, bench, oracle, gen,
  report).  `args` excludes the program name.  Returns the process exit
  code: 0 on success, 1 when the requested run failed on its merits (no
  solution, membership violations, oracle disagreement), 2 on usage or
  configuration errors.
*/
int run_cli(const std::vector<std::string> &args);

} // namespace psearch
