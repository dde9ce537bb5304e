#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "flatscan/errors.hpp"
#include "flatscan/geometry.hpp"
#include "flatscan/surface.hpp"

namespace flatscan {

/// An angle p*pi/q in lowest terms.
struct RationalAngle {
  long p = 1;
  long q = 1;
  double radians() const { return kPi * static_cast<double>(p) / static_cast<double>(q); }
  friend bool operator==(RationalAngle, RationalAngle) = default;
};

inline constexpr long kMaxDenominator = 1000;

/// Continued-fraction recovery of angle/pi as p/q with q <= max_q.
inline std::optional<RationalAngle> recover_rational(double radians, long max_q = kMaxDenominator,
                                                     double tol = kAngleTol) {
  const double x = radians / kPi;
  if (!(x > 0.0) || !std::isfinite(x)) return std::nullopt;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double rem = x;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(rem);
    long ai = static_cast<long>(a);
    long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_q) break;
    if (std::abs(kPi * (static_cast<double>(p2) / static_cast<double>(q2)) - radians) <= tol) {
      long gd = std::gcd(p2, q2);
      return RationalAngle{p2 / gd, q2 / gd};
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = rem - a;
    if (frac < 1e-15) break;
    rem = 1.0 / frac;
  }
  return std::nullopt;
}

inline RationalAngle parse_rational_angle(const std::string& text) {
  auto slash = text.find('/');
  try {
    long p = std::stol(text.substr(0, slash));
    long q = slash == std::string::npos ? 1 : std::stol(text.substr(slash + 1));
    if (p <= 0 || q <= 0) throw Error(ErrorKind::ParseError, "angle must be a positive fraction: " + text);
    long gd = std::gcd(p, q);
    return {p / gd, q / gd};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::ParseError, "cannot parse angle '" + text + "' as p/q");
  }
}

/// A simple polygon with rational angles (in units of pi), counterclockwise.
struct RationalPolygon {
  std::vector<PlanarVector> vertices;
  std::vector<RationalAngle> angles;

  std::vector<PlanarVector> edges() const {
    std::vector<PlanarVector> e(vertices.size());
    for (std::size_t k = 0; k < vertices.size(); ++k) e[k] = vertices[(k + 1) % vertices.size()] - vertices[k];
    return e;
  }
  double area() const { return polygon_signed_area(vertices); }
  long lcm_denominator() const {
    long n = 1;
    for (auto a : angles) n = std::lcm(n, a.q);
    return n;
  }
};

/// Interior angle at each vertex of a counterclockwise polygon.
inline std::vector<double> interior_angles(const std::vector<PlanarVector>& verts) {
  const std::size_t n = verts.size();
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    PlanarVector prev = verts[(k + n - 1) % n], cur = verts[k], next = verts[(k + 1) % n];
    PlanarVector out_dir = next - cur, back = prev - cur;
    // angle swept counterclockwise from the outgoing edge to the incoming edge reversed
    double a = std::atan2(cross(out_dir, back), dot(out_dir, back));
    if (a <= 0.0) a += kTwoPi;
    out[k] = a;
  }
  return out;
}

/// Builds a RationalPolygon from vertices, recovering angles by continued fractions when
/// `angles` is empty and checking them against the geometry otherwise.
inline RationalPolygon make_rational_polygon(std::vector<PlanarVector> vertices,
                                             std::vector<RationalAngle> angles = {}) {
  if (vertices.size() < 3) throw Error(ErrorKind::NonSimplePolygon, "polygon needs at least 3 vertices");
  if (polygon_signed_area(vertices) < 0.0) {
    std::reverse(vertices.begin(), vertices.end());
    if (!angles.empty()) std::reverse(angles.begin(), angles.end());
  }
  {
    std::vector<PlanarVector> shifted(vertices.size());
    for (std::size_t k = 0; k < vertices.size(); ++k) shifted[k] = vertices[k] - vertices[0];
    detail::check_simple(shifted, 0);
  }
  auto geo = interior_angles(vertices);
  if (angles.empty()) {
    for (std::size_t k = 0; k < geo.size(); ++k) {
      auto ra = recover_rational(geo[k]);
      if (!ra)
        throw Error(ErrorKind::IrrationalAngle, "angle " + std::to_string(geo[k]) + " at vertex " + std::to_string(k) +
                                                    " is not within tolerance of p*pi/q with q <= 1000");
      angles.push_back(*ra);
    }
  } else {
    if (angles.size() != vertices.size())
      throw Error(ErrorKind::InvalidParameter, "need one angle per vertex");
    for (std::size_t k = 0; k < geo.size(); ++k)
      if (std::abs(angles[k].radians() - geo[k]) > kAngleTol)
        throw Error(ErrorKind::IrrationalAngle, "supplied angle " + std::to_string(angles[k].p) + "/" +
                                                    std::to_string(angles[k].q) + " does not match vertex " +
                                                    std::to_string(k));
  }
  double sum = 0.0;
  for (auto a : angles) sum += a.radians();
  if (std::abs(sum - kPi * (static_cast<double>(vertices.size()) - 2.0)) > kAngleTol * vertices.size())
    throw Error(ErrorKind::NonSimplePolygon, "angles do not sum to (n-2)pi");
  return {std::move(vertices), std::move(angles)};
}

/// Triangle with the given angles at vertices 0, 1, 2 and side v0v1 of length `base`.
inline RationalPolygon triangle_from_angles(RationalAngle a0, RationalAngle a1, RationalAngle a2, double base = 1.0) {
  double s0 = a0.radians(), s1 = a1.radians(), s2 = a2.radians();
  if (std::abs(s0 + s1 + s2 - kPi) > kAngleTol) throw Error(ErrorKind::NonSimplePolygon, "triangle angles must sum to pi");
  double side02 = base * std::sin(s1) / std::sin(s2);
  std::vector<PlanarVector> v{{0.0, 0.0}, {base, 0.0}, {side02 * std::cos(s0), side02 * std::sin(s0)}};
  return make_rational_polygon(std::move(v), {a0, a1, a2});
}

namespace detail {

/// det = +1 elements are rotations, det = -1 reflections.
struct LinearPart {
  double a, b, c, d;
  PlanarVector operator*(PlanarVector v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  LinearPart operator*(const LinearPart& n) const {
    return {a * n.a + b * n.c, a * n.b + b * n.d, c * n.a + d * n.c, c * n.b + d * n.d};
  }
  double det() const { return a * d - b * c; }
};

inline LinearPart rotation(double th) { return {std::cos(th), -std::sin(th), std::sin(th), std::cos(th)}; }
inline LinearPart reflection_in_line(double beta) {
  return {std::cos(2 * beta), std::sin(2 * beta), std::sin(2 * beta), -std::cos(2 * beta)};
}

}  // namespace detail

/// Unfolds a rational billiard table into a translation surface assembled from 2N reflected
/// copies, N = lcm of the angle denominators. Copy k < N is r^k, copy N + k is s r^k, where
/// r is rotation by 2pi/N and s is reflection in side 0.
inline TranslationSurface unfold(const RationalPolygon& P) {
  const long N = P.lcm_denominator();
  const auto edges = P.edges();
  const int n = static_cast<int>(edges.size());
  std::vector<detail::LinearPart> group;
  const auto s0 = detail::reflection_in_line(angle_of(edges[0]));
  for (long k = 0; k < N; ++k) group.push_back(detail::rotation(kTwoPi * k / N));
  for (long k = 0; k < N; ++k) group.push_back(s0 * detail::rotation(kTwoPi * k / N));

  auto lookup = [&](const detail::LinearPart& m) {
    for (std::size_t idx = 0; idx < group.size(); ++idx) {
      const auto& e = group[idx];
      if (std::abs(e.a - m.a) + std::abs(e.b - m.b) + std::abs(e.c - m.c) + std::abs(e.d - m.d) < 1e-6)
        return static_cast<int>(idx);
    }
    throw Error(ErrorKind::IrrationalAngle, "side reflections do not close up into the dihedral group");
  };

  SurfaceDescription desc;
  auto side_index = [&](int copy, int side) { return group[copy].det() > 0.0 ? side : n - 1 - side; };
  for (std::size_t c = 0; c < group.size(); ++c) {
    const auto& M = group[c];
    std::vector<PlanarVector> poly(n);
    for (int k = 0; k < n; ++k) {
      if (M.det() > 0.0)
        poly[k] = M * edges[k];
      else
        poly[k] = -(M * edges[n - 1 - k]);
    }
    desc.polygons.push_back(std::move(poly));
  }
  for (int c = 0; c < static_cast<int>(group.size()); ++c)
    for (int i = 0; i < n; ++i) {
      int partner = lookup(group[c] * detail::reflection_in_line(angle_of(edges[i])));
      if (partner <= c) continue;
      desc.gluings.push_back({{c, side_index(c, i)}, {partner, side_index(partner, i)}});
    }
  // glued sides are images of the same edge under M and M*sigma, so make them exact negatives
  for (const auto& gl : desc.gluings)
    desc.polygons[gl.b.polygon][gl.b.side] = -desc.polygons[gl.a.polygon][gl.a.side];
  return build_surface(desc);
}

}  // namespace flatscan
