#pragma once

#include "hgdeg/mobius.hpp"

#include <iosfwd>
#include <string>

namespace hgdeg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // a verification or table check failed
inline constexpr int kExitUsage = 2;    // bad arguments or evaluation error

/// "re", "re+imi", "re-imi", "imi", "i"; decimal literals.
Complex parse_complex(const std::string& s);

/// Runs the command line; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hgdeg::cli
