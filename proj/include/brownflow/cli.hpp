#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace brownflow::cli {

enum ExitCode { kOk = 0, kValidation = 1, kNumeric = 2 };

// Parses and runs one command. Summaries go to out, diagnostics to err.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace brownflow::cli
