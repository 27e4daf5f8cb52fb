#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace formicode {

// Arbitrary-precision integers and rationals used wherever a contract
// promises an exact probability or count.
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline double to_double(const BigRational& value) {
  return static_cast<double>(value);
}

BigInt factorial(int n);
BigInt binomial_coefficient(int n, int k);

}  // namespace formicode
