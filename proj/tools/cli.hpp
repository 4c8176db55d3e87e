// Command line front end. run() is separated from main() so tests can drive
// the full argument-to-output path in process.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ent::cli {

inline constexpr int kOk = 0;
inline constexpr int kUsageError = 2;   // bad flags, unknown names
inline constexpr int kInputError = 3;   // unreadable or malformed files
inline constexpr int kDomainError = 4;  // numerically undefined requests

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ent::cli
