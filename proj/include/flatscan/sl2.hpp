#pragma once

#include <cmath>
#include <string>

#include "flatscan/errors.hpp"
#include "flatscan/geometry.hpp"
#include "flatscan/surface.hpp"

namespace flatscan {

/// Row-major 2x2 real matrix acting on column vectors.
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static constexpr Mat2 identity() { return {}; }
  constexpr double det() const { return a * d - b * c; }
  constexpr PlanarVector operator*(PlanarVector v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  friend constexpr Mat2 operator*(const Mat2& m, const Mat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
  constexpr Mat2 inverse_unimodular() const { return {d, -b, -c, a}; }
  /// Operator norm (largest singular value).
  double op_norm() const {
    double s = a * a + b * b + c * c + d * d;
    double dt = det();
    return std::sqrt(0.5 * (s + std::sqrt(std::max(0.0, s * s - 4.0 * dt * dt))));
  }
};

inline constexpr double kUnimodularTol = 1e-9;

/// Teichmueller geodesic flow element diag(e^-t, e^t).
inline Mat2 g(double t) { return {std::exp(-t), 0.0, 0.0, std::exp(t)}; }

/// Rotation by theta.
inline Mat2 r(double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  return {c, -s, s, c};
}

/// Applies an element of SL2(R) to every edge vector. Gluings are unchanged.
inline TranslationSurface apply(const TranslationSurface& X, const Mat2& M) {
  if (!(std::abs(M.det() - 1.0) <= kUnimodularTol))
    throw Error(ErrorKind::NotUnimodular, "determinant " + std::to_string(M.det()) + " is not 1");
  return X.transformed([&M](PlanarVector v) { return M * v; });
}

}  // namespace flatscan
