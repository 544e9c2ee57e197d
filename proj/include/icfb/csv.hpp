#pragma once

#include <cstdio>
#include <string>

#include "rational.hpp"

namespace icfb {

// Fixed 9-significant-digit formatting keeps sweep output byte-stable.
inline std::string format_sig9(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

inline std::string format_sig9(const Rational& v) { return format_sig9(v.to_double()); }

}  // namespace icfb
