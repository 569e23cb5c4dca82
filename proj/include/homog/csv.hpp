#pragma once

#include <cstdio>
#include <string>

namespace homog {

// CSV bodies must be byte-stable across thread counts and reruns, so all
// floating-point formatting funnels through one shortest-roundtrip printf.
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace homog
