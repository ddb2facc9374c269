#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace schedlab {

/// Command-line driver.  Exit codes: 0 success, 1 honest negative verdict
/// (infeasible / no solution), 2 usage or input errors.  Output on `out` is
/// byte-reproducible for fixed arguments and seeds.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace schedlab
