#pragma once

#include <ostream>

namespace tndp::cli {

// Entry point of the `tndp` tool: analyze, solve, bench and validate.
// Returns the process exit code: 0 when all requested work completed, 1 on
// runtime or data errors, 2 on usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tndp::cli
