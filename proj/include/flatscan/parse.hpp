#pragma once

#include <cctype>
#include <cstdlib>
#include <string>

#include "flatscan/errors.hpp"
#include "flatscan/geometry.hpp"

namespace flatscan {

/// Angle in radians from "0.3", "pi", "-pi/4", "3pi/8", "3*pi/8" or "pi*0.5".
inline double parse_angle(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  auto fail = [&]() -> double { throw Error(ErrorKind::ParseError, "cannot parse angle '" + text + "'"); };
  if (s.empty()) return fail();

  auto number = [&](const std::string& t, double& out) {
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
  };

  double sign = 1.0;
  if (s[0] == '-' || s[0] == '+') {
    if (s[0] == '-') sign = -1.0;
    s.erase(0, 1);
  }
  auto p = s.find("pi");
  if (p == std::string::npos) {
    double v;
    if (!number(s, v)) return fail();
    return sign * v;
  }
  std::string before = s.substr(0, p), after = s.substr(p + 2);
  if (!before.empty() && before.back() == '*') before.pop_back();
  double mult = 1.0;
  if (!before.empty() && !number(before, mult)) return fail();
  double div = 1.0;
  if (!after.empty()) {
    if (after[0] == '/') {
      if (!number(after.substr(1), div) || div == 0.0) return fail();
    } else if (after[0] == '*') {
      double m2;
      if (!before.empty() || !number(after.substr(1), m2)) return fail();
      mult = m2;
    } else {
      return fail();
    }
  }
  return sign * mult * kPi / div;
}

}  // namespace flatscan
