#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace brc::cli {

enum ExitCode : int { pass = 0, mismatch = 2, incomplete = 3, usage = 64 };

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace brc::cli
