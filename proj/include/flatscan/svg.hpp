#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "flatscan/errors.hpp"
#include "flatscan/scan.hpp"
#include "flatscan/surface.hpp"

namespace flatscan {

struct RenderSpec {
  double radius = 7.0;
  /// Stroke width is w0 / |s|; zero picks w0 so the shortest connection is 2 units wide.
  double w0 = 0.0;
  std::string color = "#1f4e99";
  double canvas = 800.0;
  bool outlines = true;
};

struct Segment2 {
  PlanarVector a, b;
};

/// Pieces of a connection in the coordinates of its defining polygons.
inline std::vector<std::pair<int, Segment2>> polygon_segments(const TranslationSurface& X, const SaddleConnection& s) {
  std::vector<std::pair<int, Segment2>> out;
  TraceResult tr = develop(X, s);
  const PlanarVector u = (1.0 / s.length()) * s.holonomy;
  for (const auto& pc : tr.pieces) {
    const TriangleOrigin& o = X.origin(pc.placement.triangle);
    out.push_back({o.polygon,
                   {pc.enter * u - pc.placement.offset + o.offset, pc.exit * u - pc.placement.offset + o.offset}});
  }
  return out;
}

/// SVG 1.1 drawing of every connection in `connections`, polygons laid out on a grid.
inline std::string render_svg(const TranslationSurface& X, const std::vector<SaddleConnection>& connections,
                              const RenderSpec& spec) {
  const auto& polys = X.description().polygons;
  const int np = static_cast<int>(polys.size());
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(np))));
  const int rows = (np + cols - 1) / cols;

  std::vector<std::vector<PlanarVector>> verts;
  double cw = 0.0, ch = 0.0;
  std::vector<PlanarVector> lo(np);
  for (int p = 0; p < np; ++p) {
    verts.push_back(polygon_vertices(polys[p]));
    PlanarVector mn{INFINITY, INFINITY}, mx{-INFINITY, -INFINITY};
    for (auto v : verts.back()) {
      mn = {std::min(mn.x, v.x), std::min(mn.y, v.y)};
      mx = {std::max(mx.x, v.x), std::max(mx.y, v.y)};
    }
    lo[p] = mn;
    cw = std::max(cw, mx.x - mn.x);
    ch = std::max(ch, mx.y - mn.y);
  }
  const double gap = 0.1 * std::max(cw, ch);
  const double world_w = cols * cw + (cols + 1) * gap, world_h = rows * ch + (rows + 1) * gap;
  const double scale = spec.canvas / std::max(world_w, world_h);
  const double width = world_w * scale, height = world_h * scale;
  auto to_canvas = [&](int p, PlanarVector v) {
    int c = p % cols, rr = p / cols;
    double x = gap + c * (cw + gap) + (v.x - lo[p].x);
    double y = gap + rr * (ch + gap) + (v.y - lo[p].y);
    // flip y so the picture has the usual orientation
    return PlanarVector{x * scale, height - y * scale};
  };

  double shortest = INFINITY;
  for (const auto& s : connections) shortest = std::min(shortest, s.length());
  const double w0 = spec.w0 > 0.0 ? spec.w0 : (std::isfinite(shortest) ? 2.0 * shortest : 1.0);
  if (!(w0 > 0.0)) throw Error(ErrorKind::InvalidParameter, "stroke width constant must be positive");

  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return std::string(buf);
  };
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
     << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (spec.outlines)
    for (int p = 0; p < np; ++p) {
      os << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
      for (std::size_t k = 0; k < verts[p].size(); ++k) {
        PlanarVector c = to_canvas(p, verts[p][k]);
        os << (k ? " " : "") << num(c.x) << ',' << num(c.y);
      }
      os << "\"/>\n";
    }
  os << "<g stroke=\"" << spec.color << "\" stroke-linecap=\"round\">\n";
  for (const auto& s : connections) {
    const double w = w0 / s.length();
    for (const auto& [p, seg] : polygon_segments(X, s)) {
      PlanarVector a = to_canvas(p, seg.a), b = to_canvas(p, seg.b);
      os << "<line x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\"" << num(b.x) << "\" y2=\"" << num(b.y)
         << "\" stroke-width=\"" << format_double(w) << "\"/>\n";
    }
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

inline std::string render_svg(const TranslationSurface& X, const RenderSpec& spec, const ScanOptions& opts = {}) {
  return render_svg(X, scan(X, spec.radius, AngleInterval::full(), opts).connections, spec);
}

}  // namespace flatscan
