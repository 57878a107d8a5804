#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "tll/landscape.hpp"

namespace tll::testing {

inline Rat R(const std::string& s) { return *Rat::parse(s); }

inline std::vector<Point> pts(
    std::initializer_list<std::pair<const char*, const char*>> list) {
  std::vector<Point> out;
  for (const auto& [t, v] : list) out.push_back({R(t), R(v)});
  return out;
}

inline Interval I(const std::string& lo, const std::string& hi) {
  return {R(lo), R(hi)};
}

}  // namespace tll::testing
