#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dtkg {

// Exit statuses of the dtkg command.
inline constexpr int kExitOk = 0;        // success, no error-level findings
inline constexpr int kExitFindings = 1;  // violations or analysis findings
inline constexpr int kExitUsage = 2;     // usage, file or parse failure

// Runs one dtkg command line (args excludes the program name). Normal output
// goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dtkg
