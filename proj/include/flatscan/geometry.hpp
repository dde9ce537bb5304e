#pragma once

#include <cmath>
#include <numbers>

namespace flatscan {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tolerances shared across the library.
inline constexpr double kGlueTol = 1e-9;   // absolute, on edge-vector match
inline constexpr double kAngleTol = 1e-9;  // radians, on cone angles
inline constexpr double kHitTol = 1e-9;    // relative, on vertex hits and path closure
inline constexpr double kDedupTol = 1e-9;  // absolute, on holonomy keys

/// A vector in the plane, used both for holonomies and developed positions.
struct PlanarVector {
  double x = 0.0;
  double y = 0.0;

  constexpr PlanarVector& operator+=(PlanarVector o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr PlanarVector& operator-=(PlanarVector o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr PlanarVector& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }

  friend constexpr PlanarVector operator+(PlanarVector a, PlanarVector b) { return a += b; }
  friend constexpr PlanarVector operator-(PlanarVector a, PlanarVector b) { return a -= b; }
  friend constexpr PlanarVector operator-(PlanarVector a) { return {-a.x, -a.y}; }
  friend constexpr PlanarVector operator*(double s, PlanarVector a) { return a *= s; }
  friend constexpr PlanarVector operator*(PlanarVector a, double s) { return a *= s; }
  friend constexpr bool operator==(PlanarVector, PlanarVector) = default;
};

constexpr double dot(PlanarVector a, PlanarVector b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(PlanarVector a, PlanarVector b) { return a.x * b.y - a.y * b.x; }
constexpr double norm2(PlanarVector a) { return dot(a, a); }
inline double norm(PlanarVector a) { return std::hypot(a.x, a.y); }

/// Wraps an angle into [0, 2pi).
inline double wrap_angle(double theta) {
  double w = std::fmod(theta, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

/// Direction of v in [0, 2pi).
inline double angle_of(PlanarVector v) {
  double a = std::atan2(v.y, v.x);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

/// Squared distance from the origin to the segment [a, b].
inline double segment_distance2(PlanarVector a, PlanarVector b) {
  PlanarVector d = b - a;
  double len2 = norm2(d);
  if (len2 <= 0.0) return norm2(a);
  double u = -dot(a, d) / len2;
  if (u <= 0.0) return norm2(a);
  if (u >= 1.0) return norm2(b);
  return norm2(a + u * d);
}

inline bool is_finite(PlanarVector v) { return std::isfinite(v.x) && std::isfinite(v.y); }

/// Half-open arc [start, end) on the circle, stored by its endpoints so that arcs
/// sharing an endpoint partition the circle exactly.
class AngleInterval {
 public:
  AngleInterval() = default;
  AngleInterval(double start, double length) {
    if (length >= kTwoPi) {
      kind_ = Kind::Full;
    } else if (length <= 0.0) {
      kind_ = Kind::Empty;
    } else {
      start_ = wrap_angle(start);
      end_ = wrap_angle(start + length);
      kind_ = Kind::Arc;
    }
  }

  static AngleInterval full() { return {0.0, kTwoPi}; }
  static AngleInterval empty() { return {0.0, 0.0}; }
  /// Arc from a counterclockwise to b; equal endpoints give the empty arc.
  static AngleInterval between(double a, double b) {
    AngleInterval out;
    double s = wrap_angle(a), e = wrap_angle(b);
    if (s == e) {
      out.kind_ = Kind::Empty;
    } else {
      out.start_ = s;
      out.end_ = e;
      out.kind_ = Kind::Arc;
    }
    return out;
  }

  double start() const { return start_; }
  double length() const {
    switch (kind_) {
      case Kind::Full: return kTwoPi;
      case Kind::Empty: return 0.0;
      default: return end_ > start_ ? end_ - start_ : end_ + kTwoPi - start_;
    }
  }
  bool is_full() const { return kind_ == Kind::Full; }
  bool is_empty() const { return kind_ == Kind::Empty; }

  bool contains(double theta) const {
    if (kind_ != Kind::Arc) return kind_ == Kind::Full;
    double th = wrap_angle(theta);
    if (start_ < end_) return th >= start_ && th < end_;
    return th >= start_ || th < end_;
  }

  /// True when the closed arc [a, a + width] comes within `slack` of this interval.
  bool meets_arc(double a, double width, double slack) const {
    if (kind_ != Kind::Arc) return kind_ == Kind::Full;
    double w = width + 2.0 * slack;
    if (w >= kTwoPi) return true;
    double lo = wrap_angle(a - slack);
    double d = wrap_angle(lo - start_);
    if (d < length()) return true;
    return d + w >= kTwoPi;
  }

 private:
  enum class Kind { Full, Empty, Arc };
  double start_ = 0.0;
  double end_ = 0.0;
  Kind kind_ = Kind::Full;
};

}  // namespace flatscan
