#include "cayleysaw/bigint.hpp"

#include <cmath>

namespace cayleysaw {

// GCC 11 misreads the limb copy inside cpp_int shifts.
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wstringop-overflow"
#pragma GCC diagnostic ignored "-Wstringop-overread"
double log_of(const BigInt& v) {
  if (v <= 0) return -INFINITY;
  const unsigned bits = boost::multiprecision::msb(v) + 1;
  if (bits <= 1000) return std::log(v.convert_to<double>());
  const unsigned shift = bits - 64;
  const BigInt top = v >> shift;
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}
#pragma GCC diagnostic pop

}  // namespace cayleysaw
