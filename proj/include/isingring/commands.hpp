#pragma once

namespace isingring {

/// Entry point of the `isingring` command-line tool. Returns the process exit status:
/// 0 success, 1 verification failure, 2 invalid input, 3 resource limit.
int run_cli(int argc, char** argv);

}  // namespace isingring
