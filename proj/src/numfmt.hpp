#pragma once

#include <cstdio>
#include <string>

namespace swallowtail::detail {

// %g-style formatting for error messages; std::to_string prints tiny
// tolerances as 0.000000.
inline std::string g(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace swallowtail::detail
