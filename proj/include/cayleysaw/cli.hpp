#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cayleysaw {

inline constexpr const char* kToolVersion = "1.0.0";

// Runs one command line (without the program name). The report goes to `out`;
// the run manifest and diagnostics go to `err`. Returns 0 on success, 2 on a
// validation error, 3 when a cap was hit or the result is inconclusive.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace cayleysaw
