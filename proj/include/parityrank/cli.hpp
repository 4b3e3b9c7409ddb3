#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace parityrank {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitUsage = 2;

/// Entry point behind the parityrank executable. args excludes the program name.
/// `in` backs `verify --stdin`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace parityrank
