#pragma once

#include <ostream>

namespace hypgeo {

// Exit codes: 0 success or check passed, 1 check failed, 2 usage or domain
// error, 3 file I/O error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hypgeo
