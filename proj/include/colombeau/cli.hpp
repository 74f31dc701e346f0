// Batch front-end: verify / eval / table subcommands.  cli_main is separate
// from main() so the exit-code contract and output determinism are testable
// in-process.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace colombeau {

// returns the process exit status: 0 success, 1 numerical/tolerance failure,
// 2 usage or parse error
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace colombeau
