#include "imglab/format.hpp"

#include <cstdio>

namespace imglab {

std::string fmt_real(double x) {
  if (x == 0.0) return "0.0";  // normalizes -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  std::string s(buf);
  if (s.find_first_of(".einf") == std::string::npos) s += ".0";
  return s;
}

}  // namespace imglab
