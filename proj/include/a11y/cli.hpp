#pragma once

namespace a11y::cli {

// Entry point for the a11y tool. Returns the process exit code:
// 0 success (for scan: no counted violations), 1 counted violations found
// (scan only), 2 tool error.
int run_cli(int argc, char** argv);

}  // namespace a11y::cli
