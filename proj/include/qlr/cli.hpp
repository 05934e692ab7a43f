#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qlr::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kValidationFailure = 1,
    kSchemaError = 2,
    kRepresentationRefused = 3,
};

/// Run one command line (without the program name). Reports go to `out` (or to
/// --out), machine-readable diagnostics to `err` as one JSON object per line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qlr::cli
