#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace confalg {

// Exact rational scalar. cpp_rational keeps numerator and denominator coprime
// with a positive denominator, which is exactly the canonical form we need.
using Scalar = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Integer numerator(const Scalar& s) { return boost::multiprecision::numerator(s); }
inline Integer denominator(const Scalar& s) { return boost::multiprecision::denominator(s); }

inline bool is_integer(const Scalar& s) { return denominator(s) == 1; }

// Canonical text form: "p" or "p/q" with q > 1, leading '-' for negatives.
inline std::string to_string(const Scalar& s) { return s.str(); }

}  // namespace confalg
