#ifndef PWE_CLI_HPP
#define PWE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace pwe {

// Runs one CLI command. Returns the process exit status: 0 on success, 2 on
// invalid input, 3 on a precondition violation. JSON results go to `out`,
// structured JSON errors to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pwe

#endif
