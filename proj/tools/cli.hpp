#pragma once

#include <ostream>

namespace corecur::cli {

// Exit codes: 0 success, 1 domain error or negative answer, 2 usage error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_domain = 1;
inline constexpr int exit_usage = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace corecur::cli
