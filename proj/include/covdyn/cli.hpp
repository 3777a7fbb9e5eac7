#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace covdyn {

// Runs one CLI command. Reports go to `out` (JSON unless the subcommand is
// export-dot), diagnostics to `err`. Returns the process exit code:
//   0  success
//   1  negative mathematical verdict under --strict
//   2  input or usage error (with an {"error", "detail"} payload on `out`)
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace covdyn
