#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace cayleysaw {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const BigRational& v) {
  return boost::multiprecision::numerator(v).str() + "/" +
         boost::multiprecision::denominator(v).str();
}

// Natural log of a positive big integer without overflowing a double.
double log_of(const BigInt& v);

}  // namespace cayleysaw
