#pragma once

#include <ostream>

namespace qnewton {

/// Exit codes: 0 when the requested runs completed (whatever their termination),
/// 2 for invalid invocations, 1 for I/O failures.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;

/// Entry point behind the `qnewton` executable: minimize, compare, roots, bench.
/// Results directory defaults to $QNEWTON_RESULTS_DIR, else "results".
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qnewton
