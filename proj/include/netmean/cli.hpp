#pragma once

#include <ostream>

namespace netmean::cli {

// Exit codes: 0 success, 2 usage or validation error, 3 complexity or numerical guard.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitGuard = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace netmean::cli
