#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "flatscan/errors.hpp"
#include "flatscan/geometry.hpp"
#include "flatscan/scan.hpp"
#include "flatscan/sl2.hpp"
#include "flatscan/surface.hpp"
#include "flatscan/trace.hpp"

namespace flatscan {

/// One maximal family of parallel closed geodesics.
struct Cylinder {
  double direction = 0.0;
  double circumference = 0.0;
  double height = 0.0;
  /// Indices into CylinderDecomposition::connections: the boundary on the right of the
  /// direction ("bottom" after rotating the direction to horizontal) and on the left.
  std::vector<int> bottom;
  std::vector<int> top;

  double area() const { return circumference * height; }
};

struct CylinderDecomposition {
  double direction = 0.0;
  /// Saddle connections in the direction, oriented along it (holonomies in X's frame).
  std::vector<SaddleConnection> connections;
  std::vector<Cylinder> cylinders;

  double total_area() const {
    double a = 0.0;
    for (const auto& c : cylinders) a += c.area();
    return a;
  }
};

namespace detail {

inline bool wedge_contains(const Triangle& T, int vertex, PlanarVector dir) {
  PlanarVector lo = T.edges[vertex];
  PlanarVector hi = -T.edges[(vertex + 2) % 3];
  double n = norm(dir);
  double clo = cross(lo, dir) / (norm(lo) * n);
  double chi = cross(dir, hi) / (norm(hi) * n);
  bool on_lo = std::abs(clo) <= kHitTol && dot(lo, dir) > 0.0;
  return on_lo || (clo > kHitTol && chi > kHitTol);
}

/// x-extent of a triangle (local coordinates) along the horizontal line at height y.
/// Edges within `tol` of horizontal count as horizontal.
inline double chord_width(const Triangle& T, double y, double tol) {
  double xmin = INFINITY, xmax = -INFINITY;
  for (int k = 0; k < 3; ++k) {
    PlanarVector a = T.vertex(k), b = T.vertex((k + 1) % 3);
    double lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
    if (y < lo - tol || y > hi + tol) continue;
    if (hi - lo <= tol) {
      xmin = std::min({xmin, a.x, b.x});
      xmax = std::max({xmax, a.x, b.x});
    } else {
      double yc = std::clamp(y, lo, hi);
      double x = a.x + (b.x - a.x) * (yc - a.y) / (b.y - a.y);
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
    }
  }
  return xmax > xmin ? xmax - xmin : 0.0;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace detail

/// Cuts X along every saddle connection in direction theta and returns the cylinders.
/// Every separatrix in that direction must close on a cone point within `max_length`
/// (default 1e3 times a diameter bound), otherwise NotPeriodicDirection is raised.
inline CylinderDecomposition cylinder_decomposition(const TranslationSurface& X, double theta,
                                                    double max_length = 0.0) {
  const TranslationSurface Y = theta == 0.0 ? X : apply(X, r(-theta));
  if (max_length <= 0.0) max_length = 1e3 * Y.diameter_bound();
  const PlanarVector east{1.0, 0.0};
  const Mat2 back = r(theta);

  CylinderDecomposition out;
  out.direction = wrap_angle(theta);
  const int nt = Y.num_triangles();
  struct Cut {
    double y;
    int sc;
  };
  std::vector<std::vector<Cut>> cuts(nt);

  for (const auto& cp : Y.cone_points())
    for (const Corner& c : cp.corners) {
      if (!detail::wedge_contains(Y.triangle(c.triangle), c.vertex, east)) continue;
      TraceResult tr = trace_from_corner(Y, c, east, max_length);
      if (!tr.hit)
        throw Error(ErrorKind::NotPeriodicDirection,
                    "separatrix from cone point " + std::to_string(cp.id) + " exceeds length " +
                        std::to_string(max_length) + " without reaching a cone point");
      const int id = static_cast<int>(out.connections.size());
      SaddleConnection sc;
      sc.holonomy = back * PlanarVector{tr.hit_position.x, 0.0};
      sc.start_cone = cp.id;
      sc.end_cone = Y.cone_of(*tr.hit);
      sc.start_corner = c;
      sc.end_corner = *tr.hit;
      sc.start_sector = detail::sector_index(Y, c, east);
      sc.path = tr.crossings;
      out.connections.push_back(std::move(sc));
      for (const auto& piece : tr.pieces) cuts[piece.placement.triangle].push_back({-piece.placement.offset.y, id});
      if (tr.crossings.empty()) {
        // runs along an edge; the triangle on the other side sees it as a boundary too
        EdgeRef n = Y.neighbor({c.triangle, c.vertex});
        Placement other = cross_edge(Y, tr.pieces.front().placement, c.vertex);
        cuts[n.triangle].push_back({-other.offset.y, id});
      }
    }

  // horizontal slabs of every triangle between consecutive cut levels
  struct Slab {
    int tri;
    double y0, y1;
    double area;
    double lower_width, upper_width;
    int lower_sc, upper_sc;
  };
  std::vector<Slab> slabs;
  std::vector<std::vector<int>> tri_slabs(nt);
  double scale = 0.0;
  for (const auto& T : Y.triangles())
    for (auto e : T.edges) scale = std::max(scale, norm(e));
  const double ytol = 1e-9 * std::max(1.0, scale);

  for (int t = 0; t < nt; ++t) {
    const Triangle& T = Y.triangle(t);
    std::array<double, 3> vy{T.vertex(0).y, T.vertex(1).y, T.vertex(2).y};
    std::sort(vy.begin(), vy.end());
    auto cut_at = [&](double y) {
      for (const auto& c : cuts[t])
        if (std::abs(c.y - y) <= ytol) return c.sc;
      return -1;
    };
    std::vector<double> levels{vy[0], vy[2]};
    for (const auto& c : cuts[t])
      if (c.y > vy[0] + ytol && c.y < vy[2] - ytol) levels.push_back(c.y);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end(), [&](double a, double b) { return b - a <= ytol; }),
                 levels.end());
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
      Slab s;
      s.tri = t;
      s.y0 = levels[k];
      s.y1 = levels[k + 1];
      // width is linear away from the middle vertex height, so the trapezoid rule is exact
      std::vector<double> knots{s.y0, s.y1};
      if (vy[1] > s.y0 && vy[1] < s.y1) knots.insert(knots.begin() + 1, vy[1]);
      s.area = 0.0;
      for (std::size_t m = 0; m + 1 < knots.size(); ++m)
        s.area += 0.5 * (knots[m + 1] - knots[m]) * (detail::chord_width(T, knots[m], ytol) + detail::chord_width(T, knots[m + 1], ytol));
      s.lower_sc = cut_at(s.y0);
      s.upper_sc = cut_at(s.y1);
      s.lower_width = s.lower_sc >= 0 ? detail::chord_width(T, s.y0, ytol) : 0.0;
      s.upper_width = s.upper_sc >= 0 ? detail::chord_width(T, s.y1, ytol) : 0.0;
      tri_slabs[t].push_back(static_cast<int>(slabs.size()));
      slabs.push_back(s);
    }
  }

  detail::UnionFind uf(static_cast<int>(slabs.size()));
  for (int t = 0; t < nt; ++t) {
    const Triangle& T = Y.triangle(t);
    for (int k = 0; k < 3; ++k) {
      double ya = T.vertex(k).y, yb = T.vertex((k + 1) % 3).y;
      double lo = std::min(ya, yb), hi = std::max(ya, yb);
      if (hi - lo <= ytol) continue;
      EdgeRef n = Y.neighbor({t, k});
      Placement other = cross_edge(Y, Placement{t, {}}, k);
      for (int si : tri_slabs[t]) {
        double a = std::max(lo, slabs[si].y0), b = std::min(hi, slabs[si].y1);
        if (b - a <= ytol) continue;
        double ym = 0.5 * (a + b) - other.offset.y;
        for (int sj : tri_slabs[n.triangle])
          if (ym > slabs[sj].y0 && ym < slabs[sj].y1) {
            uf.unite(si, sj);
            break;
          }
      }
    }
  }

  std::vector<int> comp_index(slabs.size(), -1);
  std::vector<std::set<int>> bottoms, tops;
  std::vector<double> areas, lower, upper;
  for (std::size_t s = 0; s < slabs.size(); ++s) {
    int root = uf.find(static_cast<int>(s));
    if (comp_index[root] < 0) {
      comp_index[root] = static_cast<int>(areas.size());
      areas.push_back(0.0);
      lower.push_back(0.0);
      upper.push_back(0.0);
      bottoms.emplace_back();
      tops.emplace_back();
    }
    int ci = comp_index[root];
    areas[ci] += slabs[s].area;
    lower[ci] += slabs[s].lower_width;
    upper[ci] += slabs[s].upper_width;
    if (slabs[s].lower_sc >= 0 && slabs[s].lower_width > ytol) bottoms[ci].insert(slabs[s].lower_sc);
    if (slabs[s].upper_sc >= 0 && slabs[s].upper_width > ytol) tops[ci].insert(slabs[s].upper_sc);
  }
  for (std::size_t ci = 0; ci < areas.size(); ++ci) {
    Cylinder cyl;
    cyl.direction = out.direction;
    cyl.circumference = 0.5 * (lower[ci] + upper[ci]);
    if (!(cyl.circumference > 0.0) || std::abs(lower[ci] - upper[ci]) > 1e-6 * cyl.circumference)
      throw Error(ErrorKind::NotPeriodicDirection, "region bounded by the separatrices is not a cylinder");
    cyl.height = areas[ci] / cyl.circumference;
    cyl.bottom.assign(bottoms[ci].begin(), bottoms[ci].end());
    cyl.top.assign(tops[ci].begin(), tops[ci].end());
    out.cylinders.push_back(std::move(cyl));
  }
  return out;
}

}  // namespace flatscan
