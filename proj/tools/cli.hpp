#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace topowave::cli {

/// Runs one `topowave` invocation. args excludes the program name. Structured
/// results go to out, diagnostics to err. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace topowave::cli
