#include "plogic/rational.hpp"

#include <stdexcept>

namespace plogic {

Rat rat_from_string(const std::string& text) {
  auto bad = [&] {
    return std::invalid_argument("malformed rational: '" + text + "'");
  };
  if (text.empty()) throw bad();
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(text));
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    if (den == 0) throw bad();
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw bad();
  }
}

std::string rat_fraction_string(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string rat_short_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return rat_fraction_string(r);
}

}  // namespace plogic
