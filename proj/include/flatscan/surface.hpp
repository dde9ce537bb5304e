#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "flatscan/errors.hpp"
#include "flatscan/geometry.hpp"

namespace flatscan {

/// Side `side` of polygon `polygon` in a surface description.
struct PolygonSide {
  int polygon = 0;
  int side = 0;
  friend bool operator==(PolygonSide, PolygonSide) = default;
};

struct SideGluing {
  PolygonSide a;
  PolygonSide b;
};

/// The polygon presentation a surface is built from: each polygon is a counterclockwise
/// list of edge vectors, and sides are identified pairwise by translation.
struct SurfaceDescription {
  std::vector<std::vector<PlanarVector>> polygons;
  std::vector<SideGluing> gluings;
};

/// Vertex positions of a polygon given by edge vectors, with vertex 0 at the origin.
inline std::vector<PlanarVector> polygon_vertices(const std::vector<PlanarVector>& edges) {
  std::vector<PlanarVector> v(edges.size());
  PlanarVector p{};
  for (std::size_t k = 0; k < edges.size(); ++k) {
    v[k] = p;
    p += edges[k];
  }
  return v;
}

inline double polygon_signed_area(const std::vector<PlanarVector>& verts) {
  double a = 0.0;
  for (std::size_t k = 0; k < verts.size(); ++k) a += cross(verts[k], verts[(k + 1) % verts.size()]);
  return 0.5 * a;
}

struct Triangle {
  /// Edge vectors in counterclockwise order; edge i runs from vertex i to vertex i+1.
  std::array<PlanarVector, 3> edges;

  /// Vertex position with vertex 0 at the local origin.
  PlanarVector vertex(int i) const {
    switch (i) {
      case 0: return {};
      case 1: return edges[0];
      default: return edges[0] + edges[1];
    }
  }
  double signed_area() const { return 0.5 * cross(edges[0], edges[1]); }
  /// Interior angle at vertex i.
  double corner_angle(int i) const {
    PlanarVector out = edges[i];
    PlanarVector back = -edges[(i + 2) % 3];
    return std::atan2(cross(out, back), dot(out, back));
  }
};

struct EdgeRef {
  int triangle = 0;
  int edge = 0;
  friend bool operator==(EdgeRef, EdgeRef) = default;
};

struct EdgeGluing {
  EdgeRef a;
  EdgeRef b;
};

struct Corner {
  int triangle = 0;
  int vertex = 0;
  friend bool operator==(Corner, Corner) = default;
};

/// A vertex class of the glued complex. Cone angle is 2pi * multiple; multiple == 1 is a
/// marked regular point, which every operation still treats as a singularity.
struct ConePoint {
  int id = 0;
  double angle = 0.0;
  int multiple = 1;
  /// Incident corners in counterclockwise order around the point.
  std::vector<Corner> corners;

  int order() const { return multiple - 1; }
};

/// Where a triangle sits inside its defining polygon.
struct TriangleOrigin {
  int polygon = 0;
  /// Polygon coordinates of triangle vertex 0 (polygon vertex 0 is the origin).
  PlanarVector offset;
  /// Polygon side carried by each triangle edge, or -1 for an internal diagonal.
  std::array<int, 3> side{-1, -1, -1};
};

/// A triangle developed into the plane: its local frame translated by `offset`.
struct Placement {
  int triangle = 0;
  PlanarVector offset;
};

enum class EarOrder { LowestIndex, HighestIndex };

struct BuildOptions {
  EarOrder ear_order = EarOrder::LowestIndex;
};

class TranslationSurface;
TranslationSurface build_surface(const SurfaceDescription& desc, const BuildOptions& opts = {});

/// A closed translation surface presented as glued Euclidean triangles. Immutable once built.
class TranslationSurface {
 public:
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const Triangle& triangle(int t) const { return triangles_[t]; }
  const std::vector<EdgeGluing>& gluings() const { return gluings_; }
  const std::vector<ConePoint>& cone_points() const { return cones_; }
  const SurfaceDescription& description() const { return desc_; }
  const TriangleOrigin& origin(int t) const { return origins_[t]; }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }

  EdgeRef neighbor(EdgeRef e) const { return neighbor_[e.triangle][e.edge]; }
  int cone_of(Corner c) const { return corner_cone_[c.triangle][c.vertex]; }
  /// Angular position of the corner's first edge, measured counterclockwise around its
  /// cone point from that point's first corner.
  double corner_position(Corner c) const { return corner_pos_[c.triangle][c.vertex]; }

  double area() const { return area_; }
  int euler_characteristic() const {
    return static_cast<int>(cones_.size()) - static_cast<int>(gluings_.size()) + num_triangles();
  }
  int genus() const { return (2 - euler_characteristic()) / 2; }
  double diameter_bound() const { return diameter_bound_; }

  /// Applies a linear map with positive determinant to every edge vector.
  template <class LinearMap>
  TranslationSurface transformed(LinearMap&& map) const {
    TranslationSurface out = *this;
    for (auto& tri : out.triangles_)
      for (auto& e : tri.edges) e = map(e);
    for (auto& o : out.origins_) o.offset = map(o.offset);
    for (auto& poly : out.desc_.polygons)
      for (auto& e : poly) e = map(e);
    out.finalize();
    return out;
  }

  friend TranslationSurface build_surface(const SurfaceDescription& desc, const BuildOptions& opts);

 private:
  void finalize();

  std::vector<Triangle> triangles_;
  std::vector<EdgeGluing> gluings_;
  std::vector<std::array<EdgeRef, 3>> neighbor_;
  std::vector<TriangleOrigin> origins_;
  SurfaceDescription desc_;

  std::vector<ConePoint> cones_;
  std::vector<std::array<int, 3>> corner_cone_;
  std::vector<std::array<double, 3>> corner_pos_;
  double area_ = 0.0;
  double diameter_bound_ = 0.0;
};

namespace detail {

inline bool point_in_closed_triangle(PlanarVector p, PlanarVector a, PlanarVector b, PlanarVector c,
                                     double eps) {
  return cross(b - a, p - a) >= -eps && cross(c - b, p - b) >= -eps && cross(a - c, p - c) >= -eps;
}

inline bool segments_cross(PlanarVector a, PlanarVector b, PlanarVector c, PlanarVector d, double eps) {
  double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  return ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
         ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps));
}

/// Ear clipping. Returns triangles as index triples into `verts`, counterclockwise.
inline std::vector<std::array<int, 3>> ear_clip(const std::vector<PlanarVector>& verts, EarOrder order) {
  const int n = static_cast<int>(verts.size());
  double scale = 0.0;
  for (auto v : verts) scale = std::max(scale, norm(v));
  const double eps = 1e-12 * std::max(1.0, scale * scale);

  std::vector<int> live(n);
  std::iota(live.begin(), live.end(), 0);
  std::vector<std::array<int, 3>> tris;
  while (live.size() > 3) {
    const int m = static_cast<int>(live.size());
    int chosen = -1;
    for (int step = 0; step < m; ++step) {
      int k = order == EarOrder::LowestIndex ? step : m - 1 - step;
      int ip = live[(k + m - 1) % m], ic = live[k], in = live[(k + 1) % m];
      PlanarVector a = verts[ip], b = verts[ic], c = verts[in];
      if (cross(b - a, c - b) <= eps) continue;
      bool blocked = false;
      for (int q : live) {
        if (q == ip || q == ic || q == in) continue;
        if (point_in_closed_triangle(verts[q], a, b, c, eps)) {
          blocked = true;
          break;
        }
      }
      if (!blocked) {
        chosen = k;
        break;
      }
    }
    if (chosen < 0) throw Error(ErrorKind::NonSimplePolygon, "no ear found while triangulating polygon");
    tris.push_back({live[(chosen + m - 1) % m], live[chosen], live[(chosen + 1) % m]});
    live.erase(live.begin() + chosen);
  }
  tris.push_back({live[0], live[1], live[2]});
  return tris;
}

inline void check_simple(const std::vector<PlanarVector>& verts, int poly_id) {
  const int n = static_cast<int>(verts.size());
  if (n < 3) throw Error(ErrorKind::NonSimplePolygon, "polygon " + std::to_string(poly_id) + " has fewer than 3 sides");
  if (polygon_signed_area(verts) <= 0.0)
    throw Error(ErrorKind::NonSimplePolygon,
                "polygon " + std::to_string(poly_id) + " is not counterclockwise with positive area");
  for (int i = 0; i < n; ++i)
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_cross(verts[i], verts[(i + 1) % n], verts[j], verts[(j + 1) % n], 1e-14))
        throw Error(ErrorKind::NonSimplePolygon, "polygon " + std::to_string(poly_id) + " self-intersects");
    }
}

}  // namespace detail

inline TranslationSurface build_surface(const SurfaceDescription& desc, const BuildOptions& opts) {
  TranslationSurface s;
  s.desc_ = desc;
  const int np = static_cast<int>(desc.polygons.size());
  if (np == 0) throw Error(ErrorKind::Disconnected, "surface description has no polygons");

  // triangle edge carrying each polygon side
  std::vector<std::vector<EdgeRef>> side_edge(np);
  for (int p = 0; p < np; ++p) {
    const auto& edges = desc.polygons[p];
    PlanarVector sum{};
    for (auto e : edges) {
      if (!is_finite(e)) throw Error(ErrorKind::NonClosedPolygon, "non-finite edge in polygon " + std::to_string(p));
      sum += e;
    }
    if (norm(sum) > kGlueTol)
      throw Error(ErrorKind::NonClosedPolygon, "edges of polygon " + std::to_string(p) + " sum to (" +
                                                   std::to_string(sum.x) + ", " + std::to_string(sum.y) + ")");
    auto verts = polygon_vertices(edges);
    detail::check_simple(verts, p);
    const int n = static_cast<int>(verts.size());
    side_edge[p].assign(n, EdgeRef{-1, -1});

    struct Pending {
      int a, b;
      EdgeRef ref;
    };
    std::vector<Pending> diagonals;
    for (auto tri : detail::ear_clip(verts, opts.ear_order)) {
      int t = static_cast<int>(s.triangles_.size());
      Triangle T;
      TriangleOrigin o;
      o.polygon = p;
      o.offset = verts[tri[0]];
      for (int k = 0; k < 3; ++k) {
        int a = tri[k], b = tri[(k + 1) % 3];
        // polygon sides use the given edge vector so gluing checks see the input exactly
        if (b == (a + 1) % n) {
          T.edges[k] = edges[a];
          o.side[k] = a;
          side_edge[p][a] = {t, k};
        } else {
          T.edges[k] = verts[b] - verts[a];
          diagonals.push_back({a, b, {t, k}});
        }
      }
      // close the triangle exactly
      T.edges[2] = -(T.edges[0] + T.edges[1]);
      s.triangles_.push_back(T);
      s.origins_.push_back(o);
    }
    for (std::size_t i = 0; i < diagonals.size(); ++i)
      for (std::size_t j = i + 1; j < diagonals.size(); ++j)
        if (diagonals[i].a == diagonals[j].b && diagonals[i].b == diagonals[j].a)
          s.gluings_.push_back({diagonals[i].ref, diagonals[j].ref});
  }

  std::vector<std::vector<int>> used(np);
  for (int p = 0; p < np; ++p) used[p].assign(desc.polygons[p].size(), 0);
  for (const auto& g : desc.gluings) {
    for (auto side : {g.a, g.b}) {
      if (side.polygon < 0 || side.polygon >= np || side.side < 0 ||
          side.side >= static_cast<int>(desc.polygons[side.polygon].size()))
        throw Error(ErrorKind::GluingMismatch, "gluing references a missing side " + std::to_string(side.polygon) +
                                                   "." + std::to_string(side.side));
      if (used[side.polygon][side.side]++)
        throw Error(ErrorKind::GluingMismatch, "side " + std::to_string(side.polygon) + "." +
                                                   std::to_string(side.side) + " is glued more than once");
    }
    PlanarVector ea = desc.polygons[g.a.polygon][g.a.side];
    PlanarVector eb = desc.polygons[g.b.polygon][g.b.side];
    if (norm(ea + eb) > kGlueTol)
      throw Error(ErrorKind::GluingMismatch, "sides " + std::to_string(g.a.polygon) + "." + std::to_string(g.a.side) +
                                                 " and " + std::to_string(g.b.polygon) + "." +
                                                 std::to_string(g.b.side) + " are not opposite vectors");
    s.gluings_.push_back({side_edge[g.a.polygon][g.a.side], side_edge[g.b.polygon][g.b.side]});
  }
  for (int p = 0; p < np; ++p)
    for (std::size_t k = 0; k < used[p].size(); ++k)
      if (!used[p][k])
        throw Error(ErrorKind::GluingMismatch,
                    "side " + std::to_string(p) + "." + std::to_string(k) + " has no partner");

  s.finalize();
  return s;
}

inline void TranslationSurface::finalize() {
  const int nt = num_triangles();
  neighbor_.assign(nt, {EdgeRef{-1, -1}, EdgeRef{-1, -1}, EdgeRef{-1, -1}});
  for (const auto& g : gluings_) {
    neighbor_[g.a.triangle][g.a.edge] = g.b;
    neighbor_[g.b.triangle][g.b.edge] = g.a;
  }
  area_ = 0.0;
  double longest = 0.0;
  for (int t = 0; t < nt; ++t) {
    double a = triangles_[t].signed_area();
    if (!(a > 0.0)) throw Error(ErrorKind::DegenerateTriangle, "triangle " + std::to_string(t) + " has non-positive area");
    area_ += a;
    for (auto e : triangles_[t].edges) longest = std::max(longest, norm(e));
  }
  diameter_bound_ = longest * nt;

  // connectivity
  std::vector<int> seen(nt, 0), stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    for (auto n : neighbor_[t])
      if (!seen[n.triangle]) {
        seen[n.triangle] = 1;
        ++reached;
        stack.push_back(n.triangle);
      }
  }
  if (reached != nt) throw Error(ErrorKind::Disconnected, "glued complex is not connected");

  // vertex classes: rotate counterclockwise across edge (i+2) into corner (t', j)
  cones_.clear();
  corner_cone_.assign(nt, {-1, -1, -1});
  corner_pos_.assign(nt, {0.0, 0.0, 0.0});
  for (int t = 0; t < nt; ++t)
    for (int i = 0; i < 3; ++i) {
      if (corner_cone_[t][i] >= 0) continue;
      ConePoint cp;
      cp.id = static_cast<int>(cones_.size());
      Corner c{t, i};
      double total = 0.0;
      do {
        corner_cone_[c.triangle][c.vertex] = cp.id;
        corner_pos_[c.triangle][c.vertex] = total;
        cp.corners.push_back(c);
        total += triangles_[c.triangle].corner_angle(c.vertex);
        EdgeRef n = neighbor_[c.triangle][(c.vertex + 2) % 3];
        c = Corner{n.triangle, n.edge};
        if (cp.corners.size() > static_cast<std::size_t>(3 * nt))
          throw Error(ErrorKind::BadConeAngle, "vertex link does not close");
      } while (!(c == Corner{t, i}));
      double k = std::round(total / kTwoPi);
      if (k < 1.0 || std::abs(total - k * kTwoPi) > kAngleTol * std::max(1.0, k))
        throw Error(ErrorKind::BadConeAngle, "cone angle " + std::to_string(total) + " at vertex class " +
                                                 std::to_string(cp.id) + " is not a multiple of 2pi");
      cp.angle = total;
      cp.multiple = static_cast<int>(k);
      cones_.push_back(std::move(cp));
    }

  int excess = 0;
  for (const auto& c : cones_) excess += c.multiple - 1;
  int chi = euler_characteristic();
  if (chi % 2 != 0 || excess != -chi)
    throw Error(ErrorKind::BadConeAngle, "Gauss-Bonnet fails: sum of orders " + std::to_string(excess) +
                                             " vs 2g-2 = " + std::to_string(-chi));
}

inline double area(const TranslationSurface& X) { return X.area(); }

/// Scales every edge so the area is 1.
inline TranslationSurface normalize_area(const TranslationSurface& X) {
  const double s = 1.0 / std::sqrt(X.area());
  return X.transformed([s](PlanarVector v) { return s * v; });
}

inline TranslationSurface scaled(const TranslationSurface& X, double s) {
  return X.transformed([s](PlanarVector v) { return s * v; });
}

/// Develops the triangle across `edge` so the shared edge coincides point for point.
inline Placement cross_edge(const TranslationSurface& X, const Placement& at, int edge) {
  EdgeRef n = X.neighbor({at.triangle, edge});
  // our edge runs P_e -> P_{e+1}; the neighbor's edge runs the other way from P_{e+1}
  PlanarVector start = at.offset + X.triangle(at.triangle).vertex((edge + 1) % 3);
  return {n.triangle, start - X.triangle(n.triangle).vertex(n.edge)};
}

// Reference surfaces used throughout the tests and the CLI.

inline SurfaceDescription square_torus_description(double side = 1.0) {
  SurfaceDescription d;
  d.polygons = {{{side, 0}, {0, side}, {-side, 0}, {0, -side}}};
  d.gluings = {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}};
  return d;
}

inline SurfaceDescription rectangle_torus_description(double w, double h) {
  SurfaceDescription d;
  d.polygons = {{{w, 0}, {0, h}, {-w, 0}, {0, -h}}};
  d.gluings = {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}};
  return d;
}

/// Regular octagon with the given side length, opposite sides glued.
inline SurfaceDescription regular_octagon_description(double side = 1.0) {
  SurfaceDescription d;
  std::vector<PlanarVector> edges;
  for (int k = 0; k < 8; ++k) {
    double th = k * kPi / 4.0;
    edges.push_back({side * std::cos(th), side * std::sin(th)});
  }
  // exact axis-aligned sides keep horizontal and vertical directions clean
  edges[0] = {side, 0};
  edges[2] = {0, side};
  edges[4] = {-side, 0};
  edges[6] = {0, -side};
  double h = side * std::numbers::sqrt2 / 2.0;
  edges[1] = {h, h};
  edges[3] = {-h, h};
  edges[5] = {-h, -h};
  edges[7] = {h, -h};
  d.polygons = {edges};
  for (int k = 0; k < 4; ++k) d.gluings.push_back({{0, k}, {0, k + 4}});
  return d;
}

inline TranslationSurface square_torus(double side = 1.0) { return build_surface(square_torus_description(side)); }
inline TranslationSurface regular_octagon(double side = 1.0) {
  return build_surface(regular_octagon_description(side));
}

}  // namespace flatscan
