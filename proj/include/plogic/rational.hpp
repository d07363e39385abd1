#ifndef PLOGIC_RATIONAL_HPP
#define PLOGIC_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace plogic {

// All probability arithmetic in this project is exact. cpp_rational keeps
// numerator/denominator in lowest terms with a canonical sign.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Parses "3/4", "-1/2" or "2". Throws std::invalid_argument on malformed input.
Rat rat_from_string(const std::string& text);

// Always "num/den", e.g. "3/4", "0/1". Used by the JSON formats.
std::string rat_fraction_string(const Rat& r);

// "num/den" unless the denominator is 1, then just "num". Used by the
// formula printer ("L[1/2]", "L[1]").
std::string rat_short_string(const Rat& r);

inline bool is_probability(const Rat& r) { return r >= 0 && r <= 1; }

}  // namespace plogic

#endif
