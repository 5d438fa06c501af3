#ifndef TPDDE_CLI_HPP
#define TPDDE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tpdde {

/// Exit codes: 0 verified / constructed, 1 verification or constraint
/// failure, 2 input error (message on `err`).
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tpdde

#endif  // TPDDE_CLI_HPP
