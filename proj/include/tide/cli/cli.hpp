#pragma once

namespace tide::cli {

// Parses argv and runs one subcommand. Returns the process exit code:
// 0 success, 2 input/format error, 3 contract/integrity error.
int run(int argc, const char* const* argv);

}  // namespace tide::cli
