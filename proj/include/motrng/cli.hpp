#pragma once

namespace motrng {

/// Entry point for the `motrng` command-line tool, exposed as a library
/// function so integration tests can drive it in-process.
/// Exit codes: 0 success, 1 domain failure (failed battery, failed
/// authentication, exhausted pool), 2 usage or configuration error.
int run_cli(int argc, const char* const* argv);

} // namespace motrng
