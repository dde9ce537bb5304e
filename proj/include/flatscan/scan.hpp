#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <deque>
#include <ostream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "flatscan/errors.hpp"
#include "flatscan/geometry.hpp"
#include "flatscan/surface.hpp"
#include "flatscan/trace.hpp"

namespace flatscan {

/// An oriented saddle connection. A geodesic and its reverse are two entries.
struct SaddleConnection {
  PlanarVector holonomy;
  int start_cone = 0;
  int end_cone = 0;
  /// Which 2pi-sector of the start cone point the connection leaves through.
  int start_sector = 0;
  Corner start_corner;
  Corner end_corner;
  /// Edges crossed in order; only filled when the scan is asked for paths.
  std::vector<EdgeRef> path;

  double length() const { return norm(holonomy); }
  double angle() const { return angle_of(holonomy); }
};

struct ScanOptions {
  std::uint64_t node_budget = 100'000'000;
  bool with_paths = false;
  /// 0 picks FLATSCAN_THREADS, falling back to the hardware concurrency.
  unsigned threads = 0;
  double min_sector_width = 1e-14;
};

struct ScanResult {
  double radius = 0.0;
  AngleInterval sector = AngleInterval::full();
  std::vector<SaddleConnection> connections;
  std::uint64_t fingerprint = 0;
  std::uint64_t nodes = 0;
  /// Wedges narrower than ScanOptions::min_sector_width that were discarded.
  std::uint64_t dropped_sectors = 0;
  /// Vertices within R that sat inside the tolerance band of a wedge boundary.
  std::uint64_t boundary_hits = 0;
  std::uint64_t duplicates_removed = 0;

  std::size_t size() const { return connections.size(); }
};

inline constexpr double kMinTriangleArea = 1e-14;

/// FNV-1a hash of the triangle geometry and gluings.
inline std::uint64_t fingerprint(const TranslationSurface& X) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* p, std::size_t n) {
    auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ull;
    }
  };
  for (const auto& t : X.triangles())
    for (auto e : t.edges) {
      mix(&e.x, sizeof(double));
      mix(&e.y, sizeof(double));
    }
  for (const auto& gl : X.gluings()) {
    int v[4] = {gl.a.triangle, gl.a.edge, gl.b.triangle, gl.b.edge};
    mix(v, sizeof(v));
  }
  return h;
}

inline unsigned default_thread_count() {
  if (const char* env = std::getenv("FLATSCAN_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Total order used for every exported list: angle, length, cones, sector, holonomy.
inline bool canonical_less(const SaddleConnection& a, const SaddleConnection& b) {
  return std::make_tuple(a.angle(), a.length(), a.start_cone, a.end_cone, a.start_sector, a.holonomy.x,
                         a.holonomy.y) < std::make_tuple(b.angle(), b.length(), b.start_cone, b.end_cone,
                                                         b.start_sector, b.holonomy.x, b.holonomy.y);
}

namespace detail {

struct SeedStats {
  std::uint64_t nodes = 0;
  std::uint64_t dropped = 0;
  std::uint64_t boundary = 0;
};

inline int sector_index(const TranslationSurface& X, Corner c, PlanarVector h) {
  PlanarVector e = X.triangle(c.triangle).edges[c.vertex];
  double within = std::atan2(cross(e, h), dot(e, h));
  if (within < 0.0) within = 0.0;
  double pos = X.corner_position(c) + within;
  const ConePoint& cp = X.cone_points()[X.cone_of(c)];
  int k = static_cast<int>(std::floor(pos / kTwoPi + 1e-12));
  return std::clamp(k, 0, cp.multiple - 1);
}

/// Sector search from one corner: breadth-first development of triangles restricted to
/// the wedge of directions that see each triangle from the corner.
inline void scan_corner(const TranslationSurface& X, Corner seed, double R, const AngleInterval& I,
                        const ScanOptions& opts, std::atomic<std::uint64_t>& budget_used,
                        std::vector<SaddleConnection>& out, SeedStats& stats) {
  struct Node {
    Placement pl;
    int entry;
    PlanarVector lo, hi;
  };
  const double R2 = R * R;
  const bool full = I.is_full();
  const Triangle& T0 = X.triangle(seed.triangle);
  const int i = seed.vertex;
  const Placement start{seed.triangle, -T0.vertex(i)};
  const int start_cone = X.cone_of(seed);

  auto record = [&](PlanarVector h, Corner end) {
    SaddleConnection sc;
    sc.holonomy = h;
    sc.start_cone = start_cone;
    sc.end_cone = X.cone_of(end);
    sc.start_corner = seed;
    sc.end_corner = end;
    sc.start_sector = sector_index(X, seed, h);
    out.push_back(std::move(sc));
  };

  std::deque<Node> queue;
  auto push = [&](const Placement& from, int edge, PlanarVector lo, PlanarVector hi) {
    double width = std::atan2(cross(lo, hi), dot(lo, hi));
    if (width < opts.min_sector_width) {
      ++stats.dropped;
      return;
    }
    if (!full && !I.meets_arc(angle_of(lo), width, 1e-9)) return;
    const Triangle& T = X.triangle(from.triangle);
    PlanarVector U = from.offset + T.vertex(edge);
    PlanarVector W = from.offset + T.vertex((edge + 1) % 3);
    PlanarVector UW = W - U;
    auto clip = [&](PlanarVector d) {
      double den = cross(d, UW);
      double w = den != 0.0 ? -cross(d, U) / den : 0.0;
      return std::clamp(w, 0.0, 1.0);
    };
    double w1 = clip(lo), w2 = clip(hi);
    if (segment_distance2(U + w1 * UW, U + w2 * UW) > R2) return;
    EdgeRef n = X.neighbor({from.triangle, edge});
    queue.push_back({cross_edge(X, from, edge), n.edge, lo, hi});
  };

  PlanarVector v1 = T0.edges[i];
  PlanarVector v2 = -T0.edges[(i + 2) % 3];
  if (norm2(v1) <= R2 && I.contains(angle_of(v1))) record(v1, Corner{seed.triangle, (i + 1) % 3});
  push(start, (i + 1) % 3, v1, v2);

  while (!queue.empty()) {
    Node nd = queue.front();
    queue.pop_front();
    ++stats.nodes;
    if ((stats.nodes & 1023u) == 0) {
      if (budget_used.fetch_add(1024, std::memory_order_relaxed) + 1024 > opts.node_budget)
        throw Error(ErrorKind::RadiusTooLarge, "scan exceeded the node budget of " +
                                                   std::to_string(opts.node_budget) + " at radius " +
                                                   std::to_string(R));
    }
    const Triangle& T = X.triangle(nd.pl.triangle);
    const int j = nd.entry;
    const int opp = (j + 2) % 3;
    PlanarVector C = nd.pl.offset + T.vertex(opp);
    double nc = norm(C);
    double c_lo = cross(nd.lo, C) / (norm(nd.lo) * nc);
    double c_hi = cross(C, nd.hi) / (nc * norm(nd.hi));
    if (c_lo > kHitTol && c_hi > kHitTol) {
      if (norm2(C) <= R2 && I.contains(angle_of(C))) record(C, Corner{nd.pl.triangle, opp});
      push(nd.pl, (j + 1) % 3, nd.lo, C);
      push(nd.pl, opp, C, nd.hi);
    } else {
      if (norm2(C) <= R2 && (std::abs(c_lo) <= kHitTol || std::abs(c_hi) <= kHitTol) &&
          std::min(std::abs(c_lo), std::abs(c_hi)) > 1e-15)
        ++stats.boundary;
      if (c_lo <= kHitTol)
        push(nd.pl, opp, nd.lo, nd.hi);
      else
        push(nd.pl, (j + 1) % 3, nd.lo, nd.hi);
    }
  }
}

}  // namespace detail

/// Develops the straight path of a connection; returns the trace, which has `hit` set when the
/// path closes on a vertex.
inline TraceResult develop(const TranslationSurface& X, const SaddleConnection& s) {
  return trace_from_corner(X, s.start_corner, s.holonomy, s.length() * (1.0 + kHitTol) + kHitTol);
}

/// True when developing the path reproduces the holonomy and ends on the recorded cone point.
inline bool validate(const TranslationSurface& X, const SaddleConnection& s) {
  TraceResult tr = develop(X, s);
  if (!tr.hit) return false;
  if (X.cone_of(*tr.hit) != s.end_cone) return false;
  return norm(tr.hit_position - s.holonomy) <= kHitTol * std::max(1.0, s.length());
}

/// All oriented saddle connections of length at most R whose angle lies in I.
inline ScanResult scan(const TranslationSurface& X, double R, const AngleInterval& I = AngleInterval::full(),
                       const ScanOptions& opts = {}) {
  if (!(R > 0.0) || !std::isfinite(R)) throw Error(ErrorKind::InvalidParameter, "scan radius must be positive");
  for (int t = 0; t < X.num_triangles(); ++t)
    if (X.triangle(t).signed_area() < kMinTriangleArea)
      throw Error(ErrorKind::DegenerateTriangle,
                  "triangle " + std::to_string(t) + " has area below 1e-14; retriangulate the input");

  ScanResult res;
  res.radius = R;
  res.sector = I;
  res.fingerprint = fingerprint(X);
  if (I.is_empty()) return res;

  std::vector<Corner> seeds;
  for (const auto& cp : X.cone_points())
    for (const auto& c : cp.corners) seeds.push_back(c);

  std::vector<std::vector<SaddleConnection>> found(seeds.size());
  std::vector<detail::SeedStats> stats(seeds.size());
  std::atomic<std::uint64_t> budget_used{0};
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(seeds.size());

  auto worker = [&]() {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= seeds.size()) return;
      try {
        detail::scan_corner(X, seeds[k], R, I, opts, budget_used, found[k], stats[k]);
      } catch (...) {
        errors[k] = std::current_exception();
        next.store(seeds.size());
        return;
      }
    }
  };
  unsigned nthreads = opts.threads ? opts.threads : default_thread_count();
  nthreads = std::max(1u, std::min<unsigned>(nthreads, static_cast<unsigned>(seeds.size())));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nthreads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<SaddleConnection> all;
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    res.nodes += stats[k].nodes;
    res.dropped_sectors += stats[k].dropped;
    res.boundary_hits += stats[k].boundary;
    for (auto& sc : found[k]) all.push_back(std::move(sc));
  }
  std::sort(all.begin(), all.end(), canonical_less);

  // merge duplicates: same cones, same sector, holonomy within tolerance
  auto same = [](const SaddleConnection& a, const SaddleConnection& b) {
    return a.start_cone == b.start_cone && a.end_cone == b.end_cone && a.start_sector == b.start_sector &&
           norm(a.holonomy - b.holonomy) <= kDedupTol;
  };
  std::vector<SaddleConnection> kept;
  kept.reserve(all.size());
  for (auto& sc : all) {
    bool dup = false;
    for (auto it = kept.rbegin(); it != kept.rend() && sc.angle() - it->angle() <= 1e-9; ++it)
      if (same(*it, sc)) {
        dup = true;
        break;
      }
    // wrap-around at angle 0
    if (!dup && sc.angle() > kTwoPi - 1e-9)
      for (auto it = kept.begin(); it != kept.end() && it->angle() < 1e-9; ++it)
        if (same(*it, sc)) {
          dup = true;
          break;
        }
    if (dup)
      ++res.duplicates_removed;
    else
      kept.push_back(std::move(sc));
  }
  res.connections = std::move(kept);

  if (opts.with_paths)
    for (auto& sc : res.connections) sc.path = develop(X, sc).crossings;
  return res;
}

struct Systole {
  double length = 0.0;
  SaddleConnection connection;
};

/// Upper bound 2 sqrt(area/pi) on the shortest saddle connection.
inline double systole_bound(const TranslationSurface& X) { return 2.0 * std::sqrt(X.area() / kPi); }

/// Shortest saddle connection; ties go to the smallest angle in [0, 2pi).
inline Systole systole(const TranslationSurface& X, const ScanOptions& opts = {}) {
  double R = systole_bound(X) * (1.0 + 1e-9);
  for (;;) {
    ScanResult res = scan(X, R, AngleInterval::full(), opts);
    if (!res.connections.empty()) {
      double shortest = res.connections.front().length();
      for (const auto& sc : res.connections) shortest = std::min(shortest, sc.length());
      // connections are in angle order, so the first near-minimal one has the smallest angle
      for (const auto& sc : res.connections)
        if (sc.length() <= shortest * (1.0 + 1e-12)) return {sc.length(), sc};
    }
    R *= 2.0;
  }
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// CSV with one row per connection, in canonical order.
inline void write_scan_csv(std::ostream& os, const ScanResult& res) {
  os << "hol_x,hol_y,length,angle,start_cone,end_cone\n";
  for (const auto& sc : res.connections)
    os << format_double(sc.holonomy.x) << ',' << format_double(sc.holonomy.y) << ',' << format_double(sc.length())
       << ',' << format_double(sc.angle()) << ',' << sc.start_cone << ',' << sc.end_cone << '\n';
}

}  // namespace flatscan
