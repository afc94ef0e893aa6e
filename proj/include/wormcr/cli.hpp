#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wormcr {

/// Runs one subcommand.  Exit code 0 on pass, 1 on a failed verification, 2 on
/// usage, configuration or precondition errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct DispatchEntry {
    std::string subcommand;
    /// Library operations the subcommand reaches.
    std::vector<std::string> operations;
};

const std::vector<DispatchEntry>& dispatch_table();

}  // namespace wormcr
