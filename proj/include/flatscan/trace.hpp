#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "flatscan/errors.hpp"
#include "flatscan/geometry.hpp"
#include "flatscan/surface.hpp"

namespace flatscan {

/// Portion of a straight ray inside one developed triangle: parameters are arc length
/// along the ray from its origin.
struct PathPiece {
  Placement placement;
  double enter = 0.0;
  double exit = 0.0;
};

struct TraceResult {
  std::vector<PathPiece> pieces;
  /// Edges crossed, as (triangle, edge) of the triangle being left.
  std::vector<EdgeRef> crossings;
  /// Set when the ray stopped on a vertex.
  std::optional<Corner> hit;
  PlanarVector hit_position;
  double length = 0.0;
};

namespace detail {

/// Corner (t, i) of cone `cone` whose half-open wedge [e_i, -e_{i+2}) contains `dir`,
/// among the corners listed for the cone point.
inline std::optional<Corner> corner_for_direction(const TranslationSurface& X, int cone, PlanarVector dir,
                                                   int copy = 0) {
  const double n = norm(dir);
  int found = 0;
  for (const Corner& c : X.cone_points()[cone].corners) {
    const Triangle& T = X.triangle(c.triangle);
    PlanarVector lo = T.edges[c.vertex];
    PlanarVector hi = -T.edges[(c.vertex + 2) % 3];
    double clo = cross(lo, dir) / (norm(lo) * n);
    double chi = cross(dir, hi) / (norm(hi) * n);
    bool on_lo = std::abs(clo) <= kHitTol && dot(lo, dir) > 0.0;
    if (on_lo || (clo > kHitTol && chi > kHitTol)) {
      if (found++ == copy) return c;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Walks the straight ray leaving corner `start` in direction `dir` (which must lie in that
/// corner's wedge) until it reaches a vertex or has travelled `max_length`.
inline TraceResult trace_from_corner(const TranslationSurface& X, Corner start, PlanarVector dir,
                                     double max_length) {
  TraceResult out;
  const PlanarVector u = (1.0 / norm(dir)) * dir;
  const Triangle& T0 = X.triangle(start.triangle);
  const int i = start.vertex;
  Placement pl{start.triangle, -T0.vertex(i)};

  PlanarVector along = T0.edges[i];
  if (std::abs(cross(along, u)) <= kHitTol * norm(along) && dot(along, u) > 0.0) {
    // the ray runs along edge i to vertex i+1
    double len = norm(along);
    out.pieces.push_back({pl, 0.0, std::min(len, max_length)});
    out.length = std::min(len, max_length);
    if (len <= max_length) {
      out.hit = Corner{start.triangle, (i + 1) % 3};
      out.hit_position = along;
    }
    return out;
  }

  // exit through the edge opposite the start corner
  int exit_edge = (i + 1) % 3;
  double enter = 0.0;
  for (;;) {
    const Triangle& T = X.triangle(pl.triangle);
    PlanarVector a = pl.offset + T.vertex(exit_edge);
    PlanarVector b = pl.offset + T.vertex((exit_edge + 1) % 3);
    PlanarVector ab = b - a;
    double denom = cross(u, ab);
    double s = denom != 0.0 ? cross(a, ab) / denom : enter;
    if (s > max_length) {
      out.pieces.push_back({pl, enter, max_length});
      out.length = max_length;
      return out;
    }
    out.pieces.push_back({pl, enter, s});
    out.crossings.push_back({pl.triangle, exit_edge});
    pl = cross_edge(X, pl, exit_edge);
    enter = s;
    EdgeRef entry = X.neighbor(out.crossings.back());
    int j = entry.edge;
    const Triangle& N = X.triangle(pl.triangle);
    int opp = (j + 2) % 3;
    PlanarVector C = pl.offset + N.vertex(opp);
    double along_c = dot(u, C);
    double side = cross(u, C);
    double scale = std::max(1.0, std::abs(along_c));
    if (std::abs(side) <= kHitTol * scale) {
      if (along_c > max_length) {
        out.pieces.push_back({pl, enter, max_length});
        out.length = max_length;
        return out;
      }
      out.pieces.push_back({pl, enter, along_c});
      out.hit = Corner{pl.triangle, opp};
      out.hit_position = C;
      out.length = along_c;
      return out;
    }
    // C left of the ray: leave through edge j+1, otherwise through edge j+2
    exit_edge = side > 0.0 ? (j + 1) % 3 : (j + 2) % 3;
  }
}

/// Walks a segment starting at an interior point `base` (local coordinates of triangle
/// `tri`) with displacement `delta`. Throws SegmentHitsSingularity if it meets a vertex.
inline TraceResult trace_segment(const TranslationSurface& X, int tri, PlanarVector base, PlanarVector delta) {
  TraceResult out;
  const double len = norm(delta);
  if (!(len > 0.0)) throw Error(ErrorKind::ZeroVector, "segment has zero length");
  const PlanarVector u = (1.0 / len) * delta;
  // develop so the segment starts at the origin
  Placement pl{tri, -base};
  const Triangle& T0 = X.triangle(tri);
  int exit_edge = -1;
  double best = 0.0;
  for (int k = 0; k < 3; ++k) {
    PlanarVector a = pl.offset + T0.vertex(k);
    if (std::abs(cross(u, a)) <= kHitTol * std::max(1.0, norm(a)) && dot(u, a) > 0.0 && dot(u, a) <= len)
      throw Error(ErrorKind::SegmentHitsSingularity, "segment passes through a vertex");
    PlanarVector b = pl.offset + T0.vertex((k + 1) % 3);
    if (cross(u, a) < 0.0 && cross(u, b) > 0.0) {
      double s = cross(a, b - a) / cross(u, b - a);
      exit_edge = k;
      best = s;
    }
  }
  if (exit_edge < 0) throw Error(ErrorKind::SegmentHitsSingularity, "segment basepoint is not inside its triangle");
  double enter = 0.0;
  double s = best;
  for (;;) {
    if (s >= len) {
      out.pieces.push_back({pl, enter, len});
      out.length = len;
      return out;
    }
    out.pieces.push_back({pl, enter, s});
    out.crossings.push_back({pl.triangle, exit_edge});
    pl = cross_edge(X, pl, exit_edge);
    enter = s;
    int j = X.neighbor(out.crossings.back()).edge;
    const Triangle& N = X.triangle(pl.triangle);
    int opp = (j + 2) % 3;
    PlanarVector C = pl.offset + N.vertex(opp);
    double along_c = dot(u, C);
    double side = cross(u, C);
    if (std::abs(side) <= kHitTol * std::max(1.0, std::abs(along_c))) {
      if (along_c <= len) throw Error(ErrorKind::SegmentHitsSingularity, "segment passes through a vertex");
      out.pieces.push_back({pl, enter, len});
      out.length = len;
      return out;
    }
    exit_edge = side > 0.0 ? (j + 1) % 3 : (j + 2) % 3;
    PlanarVector a = pl.offset + N.vertex(exit_edge);
    PlanarVector b = pl.offset + N.vertex((exit_edge + 1) % 3);
    s = cross(a, b - a) / cross(u, b - a);
  }
}

}  // namespace flatscan
