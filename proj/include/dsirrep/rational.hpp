#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dsirrep {

/// Exact rational, always reduced with a positive denominator.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const Rat &r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const Rat &r) { return r.convert_to<double>(); }

inline int sign(const Rat &r) { return r.sign(); }

/// Returns the exact square root of r when r is the square of a rational.
inline bool exact_sqrt(const Rat &r, Rat &root) {
  if (r < 0) return false;
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  const BigInt sn = boost::multiprecision::sqrt(num);
  const BigInt sd = boost::multiprecision::sqrt(den);
  if (sn * sn != num || sd * sd != den) return false;
  root = Rat(sn, sd);
  return true;
}

} // namespace dsirrep
