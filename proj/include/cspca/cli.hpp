#pragma once

namespace cspca::cli {

// Batch entry point. Exit codes: 0 success, 2 usage error, 1 runtime error.
int run(int argc, const char* const* argv);

}  // namespace cspca::cli
