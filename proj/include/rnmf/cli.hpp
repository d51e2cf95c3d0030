#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rnmf {

/// Parses command-line flags (program name excluded), runs the experiment,
/// writes CSV and plot files and prints the summary table to `out`.
/// Returns 0 on success, 1 on runtime failure, 2 on invalid arguments.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rnmf
