#pragma once

namespace kfb {

// Exit codes: 0 success, 1 input error, 2 invariant violation, 3 internal
// inconsistency. Reports go to stdout, errors to stderr.
int run_cli(int argc, char** argv);

} // namespace kfb
