#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "flatscan/flatscan.hpp"
#include "oracles.hpp"

inline std::vector<oracle::Vec> holonomies(const flatscan::ScanResult& res) {
  std::vector<oracle::Vec> out;
  for (const auto& sc : res.connections) out.push_back({sc.holonomy.x, sc.holonomy.y});
  return out;
}

inline std::vector<oracle::Vec> transformed(const std::vector<oracle::Vec>& vs, const flatscan::Mat2& M) {
  std::vector<oracle::Vec> out;
  for (auto v : vs) {
    auto w = M * flatscan::PlanarVector{v.x, v.y};
    out.push_back({w.x, w.y});
  }
  return out;
}

inline const flatscan::TranslationSurface& unit_octagon() {
  static const flatscan::TranslationSurface X = flatscan::normalize_area(flatscan::regular_octagon());
  return X;
}

/// Multiset equality of vector lists within `tol` per component.
inline bool same_vectors(std::vector<oracle::Vec> a, std::vector<oracle::Vec> b, double tol = 1e-9) {
  if (a.size() != b.size()) return false;
  auto by_x = [](oracle::Vec p, oracle::Vec q) { return p.x < q.x || (p.x == q.x && p.y < q.y); };
  std::sort(a.begin(), a.end(), by_x);
  std::sort(b.begin(), b.end(), by_x);
  std::vector<char> used(b.size(), 0);
  std::size_t lo = 0;
  for (auto v : a) {
    while (lo < b.size() && b[lo].x < v.x - tol) ++lo;
    bool found = false;
    for (std::size_t k = lo; k < b.size() && b[k].x <= v.x + tol; ++k)
      if (!used[k] && std::abs(b[k].y - v.y) <= tol) {
        used[k] = 1;
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

inline bool contains_vector(const std::vector<oracle::Vec>& set, oracle::Vec v, double tol = 1e-9) {
  for (auto w : set)
    if (std::abs(w.x - v.x) <= tol && std::abs(w.y - v.y) <= tol) return true;
  return false;
}
