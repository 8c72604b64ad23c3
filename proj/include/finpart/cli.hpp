#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace finpart::cli {

/// Runs one CLI invocation.  Exit codes: 0 success, 1 usage or domain error
/// (single-line diagnostic on err), 2 computation finished but a validated
/// bound failed.  Output is deterministic for identical argument lists.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

} // namespace finpart::cli
