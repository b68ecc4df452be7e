#ifndef AUTOLOOP_CLI_HPP
#define AUTOLOOP_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace autoloop {

/// Runs one CLI invocation. Exit codes: 0 success, 1 validation or
/// verification failure, 2 usage error. Errors are mirrored as a single
/// machine-readable line on err: error code=<Name> detail="...".
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace autoloop

#endif
