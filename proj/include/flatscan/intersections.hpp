#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "flatscan/errors.hpp"
#include "flatscan/geometry.hpp"
#include "flatscan/scan.hpp"
#include "flatscan/surface.hpp"
#include "flatscan/trace.hpp"

namespace flatscan {

/// A straight segment on the surface: basepoint in local coordinates of `triangle`.
struct SurfaceSegment {
  int triangle = 0;
  PlanarVector base;
  PlanarVector delta;

  double length() const { return norm(delta); }
};

/// Triangle and local coordinates of a point given in the coordinates of a defining polygon.
inline std::optional<std::pair<int, PlanarVector>> locate(const TranslationSurface& X, int polygon, PlanarVector p) {
  for (int t = 0; t < X.num_triangles(); ++t) {
    const TriangleOrigin& o = X.origin(t);
    if (o.polygon != polygon) continue;
    const Triangle& T = X.triangle(t);
    PlanarVector q = p - o.offset;
    if (detail::point_in_closed_triangle(q, T.vertex(0), T.vertex(1), T.vertex(2), 0.0)) return std::make_pair(t, q);
  }
  return std::nullopt;
}

inline SurfaceSegment segment_at(const TranslationSurface& X, int polygon, PlanarVector p, PlanarVector delta) {
  auto loc = locate(X, polygon, p);
  if (!loc) throw Error(ErrorKind::InvalidParameter, "point is not inside the polygon");
  return {loc->first, loc->second, delta};
}

/// Number of transverse interior intersection points of a saddle connection with a segment,
/// found by clipping the two developed paths against each other triangle by triangle.
inline std::size_t count_intersections(const TranslationSurface& X, const SaddleConnection& s,
                                       const SurfaceSegment& a) {
  const double ls = s.length(), la = a.length();
  if (!(la > 0.0)) throw Error(ErrorKind::ZeroVector, "segment has zero length");
  if (std::abs(cross(s.holonomy, a.delta)) <= 1e-12 * ls * la)
    throw Error(ErrorKind::ParallelInput, "segment is parallel to the saddle connection");

  TraceResult ta = trace_segment(X, a.triangle, a.base, a.delta);
  TraceResult ts = develop(X, s);
  const PlanarVector ua = (1.0 / la) * a.delta;
  const PlanarVector us = (1.0 / ls) * s.holonomy;
  const double eps = 1e-12;

  std::vector<double> hits;
  for (const auto& pa : ta.pieces) {
    PlanarVector a0 = pa.enter * ua - pa.placement.offset;
    PlanarVector da = (pa.exit - pa.enter) * ua;
    for (const auto& ps : ts.pieces) {
      if (ps.placement.triangle != pa.placement.triangle) continue;
      PlanarVector s0 = ps.enter * us - ps.placement.offset;
      PlanarVector ds = (ps.exit - ps.enter) * us;
      double den = cross(da, ds);
      if (den == 0.0) continue;
      PlanarVector w = s0 - a0;
      double alpha = cross(w, ds) / den;
      double beta = cross(w, da) / den;
      if (alpha < -eps || alpha > 1.0 + eps || beta < -eps || beta > 1.0 + eps) continue;
      double ua_param = pa.enter + alpha * (pa.exit - pa.enter);
      double us_param = ps.enter + beta * (ps.exit - ps.enter);
      if (ua_param <= eps * la || ua_param >= la * (1.0 - eps)) continue;
      if (us_param <= eps * ls || us_param >= ls * (1.0 - eps)) continue;
      hits.push_back(ua_param);
    }
  }
  std::sort(hits.begin(), hits.end());
  // a hit on a shared triangle edge is seen from both sides
  std::size_t count = 0;
  for (std::size_t k = 0; k < hits.size(); ++k)
    if (k == 0 || hits[k] - hits[k - 1] > 1e-10 * std::max(1.0, la)) ++count;
  return count;
}

/// Right-hand side of the segment bound: |s| ((|a| + 1) / l(X))^2.
inline double intersection_bound(double s_length, double a_length, double systole_length) {
  double k = (a_length + 1.0) / systole_length;
  return s_length * k * k;
}

}  // namespace flatscan
