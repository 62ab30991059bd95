#include "qlskit/rational.hpp"

#include <stdexcept>

namespace qlskit {

Int as_integer(const Rat& r) {
  if (r.denominator() != 1)
    throw std::logic_error("expected integer, got " + str(r));
  return r.numerator();
}

std::string str(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace qlskit
