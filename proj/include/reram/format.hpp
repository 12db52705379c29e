#pragma once

#include <cstdio>
#include <string>

namespace reram {

// Fixed 15-significant-digit rendering for CSV output, so files are
// byte-stable across runs and carry full double precision.
inline std::string g15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::string(buf);
}

}  // namespace reram
