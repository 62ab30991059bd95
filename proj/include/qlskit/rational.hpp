#pragma once

#include <boost/rational.hpp>
#include <string>

namespace qlskit {

using Int = long long;
using Rat = boost::rational<Int>;

inline bool is_integer(const Rat& r) { return r.denominator() == 1; }

Int as_integer(const Rat& r);
std::string str(const Rat& r);

}  // namespace qlskit
