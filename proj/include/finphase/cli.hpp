#ifndef FINPHASE_CLI_HPP
#define FINPHASE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace finphase::cli {

/// Exit codes: 0 success, 1 domain error, 2 usage error.
enum ExitCode : int { Ok = 0, DomainError = 1, UsageError = 2 };

/// Runs the `finphase` command line. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace finphase::cli

#endif // FINPHASE_CLI_HPP
