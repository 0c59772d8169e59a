#pragma once

#include <iosfwd>

namespace sourcecount::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Entry point shared by the executable and the integration tests.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace sourcecount::cli
