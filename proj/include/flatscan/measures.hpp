#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "flatscan/errors.hpp"
#include "flatscan/geometry.hpp"
#include "flatscan/scan.hpp"
#include "flatscan/sl2.hpp"
#include "flatscan/surface.hpp"

namespace flatscan {

/// c in the Cesaro lower bound sum 1/|s| >= c |I| R.
inline constexpr double kCesaroConstant = kPi / (16.0 * std::numbers::sqrt2);
/// C in the near-horizontal bound |theta| <= C / (R |s|), for unit area.
inline constexpr double kNearHorizontalConstant = 2.0 * std::numbers::sqrt2 / kPi;

/// N(X, R, I), oriented.
inline std::size_t count(const TranslationSurface& X, double R, const AngleInterval& I = AngleInterval::full(),
                         const ScanOptions& opts = {}) {
  if (I.is_empty()) return 0;
  return scan(X, R, I, opts).size();
}

// ---------------------------------------------------------------------------
// angle measure

struct AngleMeasure {
  double radius = 0.0;
  int n_bins = 0;
  /// n_bins + 1 edges from 0 to 2pi; bin k is [edges[k], edges[k+1]).
  std::vector<double> edges;
  std::vector<double> masses;
  std::vector<std::size_t> counts;
  std::size_t total = 0;

  AngleInterval bin(int k) const { return AngleInterval::between(edges[k], edges[k + 1]); }
};

inline std::vector<double> uniform_bin_edges(int n_bins) {
  std::vector<double> e(n_bins + 1);
  for (int k = 0; k <= n_bins; ++k) e[k] = kTwoPi * k / n_bins;
  e[n_bins] = kTwoPi;
  return e;
}

/// Bin of an angle in [0, 2pi), consistent with AngleInterval::contains on each bin.
inline int bin_index(double theta, const std::vector<double>& edges) {
  const int n = static_cast<int>(edges.size()) - 1;
  double th = wrap_angle(theta);
  int k = static_cast<int>(std::upper_bound(edges.begin(), edges.end(), th) - edges.begin()) - 1;
  return std::clamp(k, 0, n - 1);
}

/// Normalized histogram of angles; the scan is one source, a CSV column another.
inline AngleMeasure angle_measure_from_angles(std::span<const double> angles, int n_bins, double radius = 0.0) {
  if (n_bins < 1) throw Error(ErrorKind::InvalidParameter, "need at least one bin");
  if (angles.empty()) throw Error(ErrorKind::EmptyScan, "no saddle connections to bin");
  AngleMeasure m;
  m.radius = radius;
  m.n_bins = n_bins;
  m.edges = uniform_bin_edges(n_bins);
  m.counts.assign(n_bins, 0);
  for (double a : angles) ++m.counts[bin_index(a, m.edges)];
  m.total = angles.size();
  m.masses.resize(n_bins);
  for (int k = 0; k < n_bins; ++k) m.masses[k] = static_cast<double>(m.counts[k]) / static_cast<double>(m.total);
  return m;
}

inline AngleMeasure angle_measure(const ScanResult& res, int n_bins) {
  std::vector<double> angles;
  angles.reserve(res.size());
  for (const auto& sc : res.connections) angles.push_back(sc.angle());
  return angle_measure_from_angles(angles, n_bins, res.radius);
}

inline AngleMeasure angle_measure(const TranslationSurface& X, double R, int n_bins, const ScanOptions& opts = {}) {
  return angle_measure(scan(X, R, AngleInterval::full(), opts), n_bins);
}

/// Kolmogorov distance to the uniform distribution, evaluated at the bin edges only
/// (a lower bound on the full statistic).
inline double ks_distance(const AngleMeasure& m) {
  double cdf = 0.0, d = 0.0;
  for (int k = 0; k < m.n_bins; ++k) {
    cdf += m.masses[k];
    d = std::max(d, std::abs(cdf - m.edges[k + 1] / kTwoPi));
  }
  return d;
}

// ---------------------------------------------------------------------------
// surface measure

struct GridCell {
  int polygon = 0;
  int i = 0;  // column
  int j = 0;  // row
  double mass = 0.0;
  double reference = 0.0;
};

struct SurfaceMeasure {
  double radius = 0.0;
  int n_grid = 0;
  std::size_t total = 0;
  std::vector<GridCell> cells;

  double total_mass() const {
    double s = 0.0;
    for (const auto& c : cells) s += c.mass;
    return s;
  }
  double sup_discrepancy() const {
    double d = 0.0;
    for (const auto& c : cells) d = std::max(d, std::abs(c.mass - c.reference));
    return d;
  }
  const GridCell& cell(int polygon, int i, int j) const { return cells[(polygon * n_grid + j) * n_grid + i]; }
};

namespace detail {

struct Box {
  double x0, y0, x1, y1;
};

inline Box bounding_box(const std::vector<PlanarVector>& verts) {
  Box b{INFINITY, INFINITY, -INFINITY, -INFINITY};
  for (auto v : verts) {
    b.x0 = std::min(b.x0, v.x);
    b.y0 = std::min(b.y0, v.y);
    b.x1 = std::max(b.x1, v.x);
    b.y1 = std::max(b.y1, v.y);
  }
  return b;
}

/// Sutherland-Hodgman clip of a polygon against an axis-aligned box.
inline std::vector<PlanarVector> clip_to_box(std::vector<PlanarVector> poly, const Box& b) {
  auto clip = [&](auto inside, auto intersect) {
    std::vector<PlanarVector> out;
    for (std::size_t k = 0; k < poly.size(); ++k) {
      PlanarVector p = poly[k], q = poly[(k + 1) % poly.size()];
      bool ip = inside(p), iq = inside(q);
      if (ip) out.push_back(p);
      if (ip != iq) out.push_back(intersect(p, q));
    }
    poly = std::move(out);
  };
  auto at_x = [](double x) {
    return [x](PlanarVector p, PlanarVector q) { return PlanarVector{x, p.y + (q.y - p.y) * (x - p.x) / (q.x - p.x)}; };
  };
  auto at_y = [](double y) {
    return [y](PlanarVector p, PlanarVector q) { return PlanarVector{p.x + (q.x - p.x) * (y - p.y) / (q.y - p.y), y}; };
  };
  clip([&](PlanarVector p) { return p.x >= b.x0; }, at_x(b.x0));
  if (!poly.empty()) clip([&](PlanarVector p) { return p.x <= b.x1; }, at_x(b.x1));
  if (!poly.empty()) clip([&](PlanarVector p) { return p.y >= b.y0; }, at_y(b.y0));
  if (!poly.empty()) clip([&](PlanarVector p) { return p.y <= b.y1; }, at_y(b.y1));
  return poly;
}

/// Adds the length of segment p0-p1 falling in each cell of an n x n grid over `box`.
inline void clip_segment_to_grid(PlanarVector p0, PlanarVector p1, const Box& box, int n, std::span<double> lengths) {
  const double w = (box.x1 - box.x0) / n, h = (box.y1 - box.y0) / n;
  std::vector<double> ts{0.0, 1.0};
  PlanarVector d = p1 - p0;
  for (int k = 1; k < n; ++k) {
    if (d.x != 0.0) {
      double t = (box.x0 + k * w - p0.x) / d.x;
      if (t > 0.0 && t < 1.0) ts.push_back(t);
    }
    if (d.y != 0.0) {
      double t = (box.y0 + k * h - p0.y) / d.y;
      if (t > 0.0 && t < 1.0) ts.push_back(t);
    }
  }
  std::sort(ts.begin(), ts.end());
  const double len = norm(d);
  for (std::size_t m = 0; m + 1 < ts.size(); ++m) {
    double dt = ts[m + 1] - ts[m];
    if (dt <= 0.0) continue;
    PlanarVector mid = p0 + (0.5 * (ts[m] + ts[m + 1])) * d;
    int i = std::clamp(static_cast<int>(std::floor((mid.x - box.x0) / w)), 0, n - 1);
    int j = std::clamp(static_cast<int>(std::floor((mid.y - box.y0) / h)), 0, n - 1);
    lengths[j * n + i] += dt * len;
  }
}

}  // namespace detail

/// Length of a saddle connection inside each grid cell, indexed (polygon * n + j) * n + i.
inline std::vector<double> cell_lengths(const TranslationSurface& X, const SaddleConnection& s, int n_grid) {
  const auto& polys = X.description().polygons;
  std::vector<detail::Box> boxes;
  for (const auto& p : polys) boxes.push_back(detail::bounding_box(polygon_vertices(p)));
  const std::size_t per = static_cast<std::size_t>(n_grid) * n_grid;
  std::vector<double> out(polys.size() * per, 0.0);
  TraceResult tr = develop(X, s);
  const PlanarVector u = (1.0 / s.length()) * s.holonomy;
  for (const auto& pc : tr.pieces) {
    const TriangleOrigin& o = X.origin(pc.placement.triangle);
    PlanarVector a = pc.enter * u - pc.placement.offset + o.offset;
    PlanarVector b = pc.exit * u - pc.placement.offset + o.offset;
    detail::clip_segment_to_grid(a, b, boxes[o.polygon], n_grid, std::span<double>(out).subspan(o.polygon * per, per));
  }
  return out;
}

/// mu_R over the given connections: each contributes its uniform probability measure.
inline SurfaceMeasure surface_measure(const TranslationSurface& X, std::span<const SaddleConnection> connections,
                                      int n_grid, double radius = 0.0) {
  if (n_grid < 1) throw Error(ErrorKind::InvalidParameter, "grid needs at least one cell per side");
  if (connections.empty()) throw Error(ErrorKind::EmptyScan, "no saddle connections to average");
  const auto& polys = X.description().polygons;
  const std::size_t per = static_cast<std::size_t>(n_grid) * n_grid;
  SurfaceMeasure m;
  m.radius = radius;
  m.n_grid = n_grid;
  m.total = connections.size();
  m.cells.resize(polys.size() * per);
  for (std::size_t p = 0; p < polys.size(); ++p) {
    auto verts = polygon_vertices(polys[p]);
    detail::Box box = detail::bounding_box(verts);
    const double w = (box.x1 - box.x0) / n_grid, h = (box.y1 - box.y0) / n_grid;
    for (int j = 0; j < n_grid; ++j)
      for (int i = 0; i < n_grid; ++i) {
        detail::Box cb{box.x0 + i * w, box.y0 + j * h, box.x0 + (i + 1) * w, box.y0 + (j + 1) * h};
        if (i == n_grid - 1) cb.x1 = box.x1;
        if (j == n_grid - 1) cb.y1 = box.y1;
        GridCell& c = m.cells[p * per + j * n_grid + i];
        c.polygon = static_cast<int>(p);
        c.i = i;
        c.j = j;
        c.reference = std::abs(polygon_signed_area(detail::clip_to_box(verts, cb))) / X.area();
      }
  }
  std::vector<double> acc(m.cells.size(), 0.0);
  for (const auto& s : connections) {
    auto lens = cell_lengths(X, s, n_grid);
    const double inv = 1.0 / s.length();
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += lens[k] * inv;
  }
  for (std::size_t k = 0; k < acc.size(); ++k) m.cells[k].mass = acc[k] / static_cast<double>(m.total);
  return m;
}

inline SurfaceMeasure surface_measure(const TranslationSurface& X, double R, int n_grid, const ScanOptions& opts = {}) {
  ScanResult res = scan(X, R, AngleInterval::full(), opts);
  return surface_measure(X, res.connections, n_grid, R);
}

inline void write_surface_measure_csv(std::ostream& os, const SurfaceMeasure& m) {
  os << "polygon,i,j,mass,reference\n";
  for (const auto& c : m.cells)
    os << c.polygon << ',' << c.i << ',' << c.j << ',' << format_double(c.mass) << ',' << format_double(c.reference)
       << '\n';
}

// ---------------------------------------------------------------------------
// Cesaro sums

struct CesaroSum {
  double radius = 0.0;
  double interval_length = 0.0;
  std::size_t terms = 0;
  double value = 0.0;
  /// c |I| R
  double bound = 0.0;

  bool holds() const { return value >= bound; }
  double margin() const { return value - bound; }
};

inline CesaroSum cesaro_sum(const ScanResult& res) {
  CesaroSum out;
  out.radius = res.radius;
  out.interval_length = res.sector.length();
  for (const auto& sc : res.connections) out.value += 1.0 / sc.length();
  out.terms = res.size();
  out.bound = kCesaroConstant * out.interval_length * out.radius;
  return out;
}

inline CesaroSum cesaro_sum(const TranslationSurface& X, double R, const AngleInterval& I,
                            const ScanOptions& opts = {}) {
  if (I.is_empty()) {
    CesaroSum out;
    out.radius = R;
    return out;
  }
  return cesaro_sum(scan(X, R, I, opts));
}

/// Smallest tested radius from which the check holds at every larger tested radius;
/// negative when it fails at the largest.
inline double empirical_threshold(std::vector<std::pair<double, bool>> checks) {
  std::sort(checks.begin(), checks.end());
  double r0 = -1.0;
  for (auto it = checks.rbegin(); it != checks.rend() && it->second; ++it) r0 = it->first;
  return r0;
}

// ---------------------------------------------------------------------------
// near-horizontal connections

struct NearHorizontal {
  double radius = 0.0;
  double t = 0.0;
  /// Connection on X, holonomy with positive x component.
  SaddleConnection connection;
  /// Signed angle to the horizontal, in (-pi/2, pi/2).
  double theta = 0.0;
  /// C / (R |s|)
  double bound = 0.0;
  double constant = kNearHorizontalConstant;
  double threshold = 0.0;
  bool perturbed = false;

  bool satisfied() const { return std::abs(theta) <= bound; }
};

/// Renormalizes by g(t) with e^t = R / b, b = 2 sqrt(area/pi), takes the systole there and
/// pulls it back. Constants scale with b so unit-area surfaces use exactly C = 2 sqrt 2 / pi.
inline NearHorizontal near_horizontal(const TranslationSurface& X, double R, const ScanOptions& opts = {}) {
  const double b = systole_bound(X);
  const double ell = systole(X, opts).length;
  NearHorizontal out;
  out.radius = R;
  out.threshold = std::numbers::sqrt2 * b * b / ell;
  out.constant = b * b / std::numbers::sqrt2;
  if (R < out.threshold)
    throw Error(ErrorKind::ThresholdNotMet,
                "R = " + format_double(R) + " is below the threshold " + format_double(out.threshold));
  out.t = std::log(R / b);

  for (int attempt = 0; attempt < 2; ++attempt) {
    const double eps = attempt == 0 ? 0.0 : 1e-6;
    const TranslationSurface Xr = eps == 0.0 ? X : apply(X, r(eps));
    const TranslationSurface Y = apply(Xr, g(out.t));
    const double shortest = systole(Y, opts).length;
    ScanResult res = scan(Y, shortest * (1.0 + 1e-9), AngleInterval::full(), opts);
    // the holonomy set is symmetric, so a shortest vector with positive x exists unless it is vertical
    const SaddleConnection* pick = nullptr;
    for (const auto& sc : res.connections)
      if (sc.length() <= shortest * (1.0 + 1e-9) && sc.holonomy.x > 1e-12 * shortest) {
        pick = &sc;
        break;
      }
    if (!pick) continue;
    out.connection = *pick;
    out.connection.holonomy = r(-eps) * (g(-out.t) * pick->holonomy);
    out.connection.path = develop(X, out.connection).crossings;
    out.perturbed = eps != 0.0;
    out.theta = std::atan2(out.connection.holonomy.y, out.connection.holonomy.x);
    out.bound = out.constant / (R * out.connection.length());
    return out;
  }
  throw Error(ErrorKind::VerticalDegenerate, "renormalized systole stays vertical after perturbation");
}

// ---------------------------------------------------------------------------
// annular wedge

/// W = {1/2 <= |v| <= 1, |arg v| <= pi/4}.
inline bool in_annular_wedge(PlanarVector v) {
  double n2 = norm2(v);
  return n2 >= 0.25 && n2 <= 1.0 && v.x > 0.0 && std::abs(v.y) <= v.x;
}

struct AnnularWedgeCount {
  double t = 0.0;
  /// N(X, e^t, I) - N(X, e^t / 2, I)
  std::size_t direct = 0;
  /// Quadrature over the doubled reflected interval of #(Lambda(g_t r_theta X) in W).
  double wedge_integral = 0.0;
  /// Same nodes, N(g_t r_theta X, 2).
  double ball_integral = 0.0;
  /// 2 R^2 times ball_integral, R = e^t.
  double bound = 0.0;
  int nodes = 0;
  std::vector<double> thetas;
  std::vector<std::size_t> wedge_counts;
  std::vector<std::size_t> ball_counts;

  bool holds() const { return static_cast<double>(direct) <= bound; }
};

/// Direct annulus count against its quadrature bound. r_theta must bring angle alpha in I to the
/// horizontal, so theta ranges over -(2I): the interval centered at -center(I) of length 2|I|.
inline AnnularWedgeCount count_annular_wedge(const TranslationSurface& X, double t,
                                             const AngleInterval& I = AngleInterval::full(), int n_nodes = 720,
                                             const ScanOptions& opts = {}) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidParameter, "t must be non-negative");
  if (n_nodes < 2) throw Error(ErrorKind::InvalidParameter, "need at least two quadrature nodes");
  AnnularWedgeCount out;
  out.t = t;
  if (I.is_empty()) return out;
  const double R = std::exp(t);
  {
    ScanResult big = scan(X, R, I, opts);
    for (const auto& sc : big.connections)
      if (sc.length() > 0.5 * R) ++out.direct;
  }
  const double L = I.length();
  const double center = I.is_full() ? 0.0 : I.start() + 0.5 * L;
  const double lo = -center - L, width = 2.0 * L;
  out.nodes = n_nodes;
  const double h = width / n_nodes;
  for (int k = 0; k < n_nodes; ++k) {
    double th = lo + (k + 0.5) * h;
    TranslationSurface Y = apply(X, g(t) * r(th));
    ScanResult res = scan(Y, 2.0, AngleInterval::full(), opts);
    std::size_t w = 0;
    for (const auto& sc : res.connections)
      if (in_annular_wedge(sc.holonomy)) ++w;
    out.thetas.push_back(th);
    out.wedge_counts.push_back(w);
    out.ball_counts.push_back(res.size());
    out.wedge_integral += h * static_cast<double>(w);
    out.ball_integral += h * static_cast<double>(res.size());
  }
  out.bound = 2.0 * R * R * out.ball_integral;
  return out;
}

// ---------------------------------------------------------------------------
// circle averages

/// Integral over theta in [0, 2pi) of 1 / |g_t r_theta v|^(1 + delta), by adaptive
/// Gauss-Kronrod on pieces split at the peaks (r_theta v horizontal) and troughs.
inline double vector_circle_average(PlanarVector v, double t, double delta, double rel_tol = 1e-10) {
  if (!(norm(v) > 0.0)) throw Error(ErrorKind::ZeroVector, "vector must be nonzero");
  if (!(delta >= 0.0 && delta < 1.0)) throw Error(ErrorKind::InvalidParameter, "delta must lie in [0, 1)");
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidParameter, "t must be non-negative");
  const double phi = angle_of(v);
  const double et = std::exp(-t), Et = std::exp(t), p = 0.5 * (1.0 + delta);
  const double vx = v.x, vy = v.y;
  auto f = [&](double th) {
    double c = std::cos(th), s = std::sin(th);
    double x = et * (c * vx - s * vy), y = Et * (s * vx + c * vy);
    return std::pow(x * x + y * y, -p);
  };
  // peak width is about e^{-2t}; give the adaptive rule explicit breakpoints around it
  const double w = std::exp(-2.0 * t);
  std::vector<double> cuts{0.0, kTwoPi};
  for (int k = 0; k < 4; ++k) cuts.push_back(wrap_angle(-phi + k * kPi / 2.0));
  for (int k = 0; k < 2; ++k)
    for (double m : {1.0, 10.0, 100.0}) {
      cuts.push_back(wrap_angle(-phi + k * kPi + m * w));
      cuts.push_back(wrap_angle(-phi + k * kPi - m * w));
    }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (cuts[k + 1] - cuts[k] <= 0.0) continue;
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, cuts[k], cuts[k + 1], 15, rel_tol);
  }
  return total;
}

struct CircleIntegralParams {
  double delta = 0.25;
  double T = 0.0;
  AngleInterval interval = AngleInterval::full();
  int n = 64;

  void validate() const {
    if (!(delta > 0.0 && delta < 0.5)) throw Error(ErrorKind::InvalidParameter, "delta must lie in (0, 1/2)");
    if (!(T >= 0.0)) throw Error(ErrorKind::InvalidParameter, "T must be non-negative");
    if (n < 16) throw Error(ErrorKind::InvalidParameter, "need at least 16 quadrature nodes");
  }
  /// Node count below which the uniform rule is flagged as under-resolved.
  double recommended_nodes() const { return 64.0 * std::exp(T) * interval.length(); }
};

struct CircleIntegral {
  double value = 0.0;
  std::vector<double> thetas;
  std::vector<double> systoles;
  bool under_resolved = false;
};

/// alpha_1(X) = 1 / l(X)^(1 + delta).
inline double alpha1(const TranslationSurface& X, double delta) {
  return std::pow(systole(X).length, -(1.0 + delta));
}

/// Midpoint rule for the integral over I of l(g_T r_theta X)^-(1 + delta); nodes run in parallel.
inline CircleIntegral circle_integral(const TranslationSurface& X, const CircleIntegralParams& params,
                                      unsigned threads = 0) {
  params.validate();
  CircleIntegral out;
  const double L = params.interval.length();
  if (L == 0.0) return out;
  const int n = params.n;
  const double h = L / n;
  out.under_resolved = n < params.recommended_nodes();
  out.thetas.resize(n);
  out.systoles.resize(n);
  for (int k = 0; k < n; ++k) out.thetas[k] = params.interval.start() + (k + 0.5) * h;

  ScanOptions single;
  single.threads = 1;
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto worker = [&]() {
    for (int k; (k = next.fetch_add(1)) < n;) {
      try {
        out.systoles[k] = systole(apply(X, g(params.T) * r(out.thetas[k])), single).length;
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  unsigned nt = threads ? threads : default_thread_count();
  nt = std::max(1u, std::min<unsigned>(nt, static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < nt; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  // reduce in node order so the value does not depend on the thread count
  for (int k = 0; k < n; ++k) out.value += h * std::pow(out.systoles[k], -(1.0 + params.delta));
  return out;
}

// ---------------------------------------------------------------------------
// report

struct ConstantCheck {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct MeasureReport {
  double radius = 0.0;
  std::size_t total = 0;
  double sup_discrepancy = 0.0;
  double ks_distance = 0.0;
  double cesaro_value = 0.0;
  std::vector<ConstantCheck> checks;
};

/// One scan feeding mu_R, nu_R and the Cesaro sum over I, plus the explicit-constant checks.
inline MeasureReport measure_report(const TranslationSurface& X, double R, int n_grid, int n_bins,
                                    const AngleInterval& I = AngleInterval::full(), const ScanOptions& opts = {}) {
  ScanResult res = scan(X, R, AngleInterval::full(), opts);
  MeasureReport rep;
  rep.radius = R;
  rep.total = res.size();
  SurfaceMeasure mu = surface_measure(X, res.connections, n_grid, R);
  rep.sup_discrepancy = mu.sup_discrepancy();
  rep.ks_distance = ks_distance(angle_measure(res, n_bins));

  ScanResult sub;
  sub.radius = R;
  sub.sector = I;
  for (const auto& sc : res.connections)
    if (I.contains(sc.angle())) sub.connections.push_back(sc);
  CesaroSum cs = cesaro_sum(sub);
  rep.cesaro_value = cs.value;
  rep.checks.push_back({"cesaro_lower_bound", cs.value, cs.bound, cs.holds()});
  double ell = res.connections.empty() ? 0.0 : res.connections.front().length();
  for (const auto& sc : res.connections) ell = std::min(ell, sc.length());
  double b = systole_bound(X);
  rep.checks.push_back({"systole_upper_bound", ell, b, ell <= b});
  return rep;
}

inline void write_report_text(std::ostream& os, const MeasureReport& rep) {
  os << "radius: " << format_double(rep.radius) << '\n'
     << "connections: " << rep.total << '\n'
     << "sup_discrepancy: " << format_double(rep.sup_discrepancy) << '\n'
     << "ks_distance: " << format_double(rep.ks_distance) << '\n'
     << "cesaro_value: " << format_double(rep.cesaro_value) << '\n';
  for (const auto& c : rep.checks)
    os << "check " << c.name << ": value " << format_double(c.value) << " bound " << format_double(c.bound) << ' '
       << (c.pass ? "PASS" : "FAIL") << '\n';
}

inline void write_report_csv(std::ostream& os, const MeasureReport& rep) {
  os << "statistic,R,value\n";
  auto row = [&](const std::string& name, double v) {
    os << name << ',' << format_double(rep.radius) << ',' << format_double(v) << '\n';
  };
  row("connections", static_cast<double>(rep.total));
  row("sup_discrepancy", rep.sup_discrepancy);
  row("ks_distance", rep.ks_distance);
  row("cesaro_value", rep.cesaro_value);
  for (const auto& c : rep.checks) {
    row(c.name + "_value", c.value);
    row(c.name + "_bound", c.bound);
  }
}

}  // namespace flatscan
