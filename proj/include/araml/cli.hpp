#ifndef ARAML_CLI_HPP
#define ARAML_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace araml {

/// Runs one command (arguments without the program name) against `out` and
/// `err`. Returns 0 on success, 1 on a semantic failure (bad input content,
/// refused operation, failed check), 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace araml

#endif
