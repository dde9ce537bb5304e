// Command-line front end: surfaces go in and out as text files, scans and measures as CSV.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "flatscan/flatscan.hpp"

namespace {

using namespace flatscan;

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw Error(ErrorKind::ParseError, "cannot write " + path);
  return file;
}

AngleInterval interval_from(const std::string& from, const std::string& to) {
  if (from.empty() && to.empty()) return AngleInterval::full();
  if (from.empty() || to.empty()) throw Error(ErrorKind::InvalidParameter, "--from and --to go together");
  double a = parse_angle(from), b = parse_angle(to);
  if (b - a >= kTwoPi) return AngleInterval::full();
  return AngleInterval(a, b - a);
}

void print_surface_summary(const TranslationSurface& X) {
  std::printf("triangles %d, genus %d, area %s, cone points %zu:", X.num_triangles(), X.genus(),
              format_double(X.area()).c_str(), X.cone_points().size());
  for (const auto& c : X.cone_points()) std::printf(" %d*2pi", c.multiple);
  std::printf("\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flatscan: saddle connections, cylinders and counting measures on translation surfaces"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "write a reference surface, or validate and rewrite a surface file");
  std::string preset = "torus", build_in, build_out;
  double side = 1.0, width = 1.0, height = 1.0;
  bool build_norm = false;
  build->add_option("--preset", preset, "torus | rectangle | octagon")->check(CLI::IsMember({"torus", "rectangle", "octagon"}));
  build->add_option("--in", build_in, "surface file to validate instead of a preset");
  build->add_option("--side", side, "side length for torus and octagon");
  build->add_option("--width", width, "rectangle width");
  build->add_option("--height", height, "rectangle height");
  build->add_flag("--normalize", build_norm, "rescale to unit area");
  build->add_option("--out", build_out, "output surface file (default stdout)");

  // unfold
  auto* unf = app.add_subcommand("unfold", "unfold a rational billiard table");
  std::vector<std::string> angle_args, vertex_args;
  std::string unf_out;
  bool unf_norm = false;
  auto* ang_opt = unf->add_option("--angles", angle_args, "triangle angles as fractions of pi, e.g. 1/2 1/8 3/8");
  auto* vert_opt = unf->add_option("--vertices", vertex_args, "polygon vertices as x,y pairs");
  ang_opt->excludes(vert_opt);
  unf->add_flag("--normalize", unf_norm, "rescale to unit area");
  unf->add_option("--out", unf_out, "output surface file (default stdout)");

  // deform
  auto* def = app.add_subcommand("deform", "apply g(t) r(theta), rotation first");
  std::string def_in, def_out, def_rot = "0";
  double def_gt = 0.0;
  def->add_option("surface", def_in, "input surface file")->required();
  def->add_option("--gt", def_gt, "geodesic flow time t");
  def->add_option("--rot", def_rot, "rotation angle (decimal or pi fraction)");
  def->add_option("--out", def_out, "output surface file (default stdout)");

  // scan
  auto* scn = app.add_subcommand("scan", "enumerate oriented saddle connections up to a radius");
  std::string scan_in, scan_out, scan_from, scan_to;
  double scan_r = 0.0;
  scn->add_option("surface", scan_in, "input surface file")->required();
  scn->add_option("--radius", scan_r, "length bound R")->required();
  scn->add_option("--from", scan_from, "start of the angle interval");
  scn->add_option("--to", scan_to, "end of the angle interval");
  scn->add_option("--out", scan_out, "CSV output (default stdout)");

  // systole
  auto* sys = app.add_subcommand("systole", "shortest saddle connection");
  std::string sys_in;
  bool sys_norm = false;
  sys->add_option("surface", sys_in, "input surface file")->required();
  sys->add_flag("--normalize", sys_norm, "rescale to unit area first");

  // cylinders
  auto* cyl = app.add_subcommand("cylinders", "cylinder decomposition in a periodic direction");
  std::string cyl_in, cyl_dir = "0";
  cyl->add_option("surface", cyl_in, "input surface file")->required();
  cyl->add_option("--direction", cyl_dir, "direction angle");

  // measure
  auto* mea = app.add_subcommand("measure", "angle and surface measures, Cesaro sum and constant checks");
  std::string mea_in, mea_out, mea_cells, mea_from, mea_to;
  double mea_r = 0.0;
  int mea_grid = 4, mea_bins = 64;
  mea->add_option("surface", mea_in, "input surface file")->required();
  mea->add_option("--radius", mea_r, "length bound R")->required();
  mea->add_option("--grid", mea_grid, "cells per side of each polygon grid")->check(CLI::PositiveNumber);
  mea->add_option("--bins", mea_bins, "angle bins")->check(CLI::PositiveNumber);
  mea->add_option("--from", mea_from, "start of the Cesaro interval");
  mea->add_option("--to", mea_to, "end of the Cesaro interval");
  mea->add_option("--out", mea_out, "report CSV (statistic,R,value)");
  mea->add_option("--cells", mea_cells, "per-cell CSV (polygon,i,j,mass,reference)");

  // plot
  auto* plt = app.add_subcommand("plot", "SVG of all connections up to a radius, width inversely proportional to length");
  std::string plt_in, plt_out;
  RenderSpec spec;
  bool no_outlines = false;
  plt->add_option("surface", plt_in, "input surface file")->required();
  plt->add_option("--radius", spec.radius, "length bound R");
  plt->add_option("--w0", spec.w0, "stroke width constant (default: shortest connection drawn 2 units wide)");
  plt->add_option("--color", spec.color, "stroke color");
  plt->add_option("--canvas", spec.canvas, "canvas size in display units");
  plt->add_flag("--no-outlines", no_outlines, "omit polygon outlines");
  plt->add_option("--out", plt_out, "SVG output (default stdout)");

  // circle-integral
  auto* cir = app.add_subcommand("circle-integral", "integral over I of l(g_T r_theta X)^-(1+delta)");
  std::string cir_in, cir_from, cir_to;
  CircleIntegralParams cp;
  bool cir_nodes_set = false;
  cir->add_option("surface", cir_in, "input surface file")->required();
  cir->add_option("--delta", cp.delta, "exponent delta in (0, 1/2)");
  cir->add_option("--T", cp.T, "flow time T");
  cir->add_option("--from", cir_from, "start of the interval");
  cir->add_option("--to", cir_to, "end of the interval");
  auto* nodes_opt = cir->add_option("--nodes", cp.n, "quadrature nodes (default 64 e^T |I|, at least 16)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*build) {
      SurfaceDescription d;
      if (!build_in.empty())
        d = load_description(build_in);
      else if (preset == "torus")
        d = square_torus_description(side);
      else if (preset == "rectangle")
        d = rectangle_torus_description(width, height);
      else
        d = regular_octagon_description(side);
      TranslationSurface X = build_surface(d);
      if (build_norm) X = normalize_area(X);
      std::ofstream f;
      write_description(open_out(build_out, f), X.description());
    } else if (*unf) {
      RationalPolygon P;
      if (!angle_args.empty()) {
        if (angle_args.size() != 3) throw Error(ErrorKind::InvalidParameter, "--angles takes exactly three fractions");
        P = triangle_from_angles(parse_rational_angle(angle_args[0]), parse_rational_angle(angle_args[1]),
                                 parse_rational_angle(angle_args[2]));
      } else if (!vertex_args.empty()) {
        std::vector<PlanarVector> verts;
        for (const auto& v : vertex_args) {
          auto comma = v.find(',');
          if (comma == std::string::npos) throw Error(ErrorKind::ParseError, "vertex '" + v + "' is not x,y");
          verts.push_back({std::stod(v.substr(0, comma)), std::stod(v.substr(comma + 1))});
        }
        P = make_rational_polygon(verts);
      } else {
        throw Error(ErrorKind::InvalidParameter, "give --angles or --vertices");
      }
      TranslationSurface X = unfold(P);
      if (unf_norm) X = normalize_area(X);
      std::ofstream f;
      write_description(open_out(unf_out, f), X.description());
    } else if (*def) {
      TranslationSurface X = load_surface(def_in);
      X = apply(X, g(def_gt) * r(parse_angle(def_rot)));
      std::ofstream f;
      write_description(open_out(def_out, f), X.description());
    } else if (*scn) {
      TranslationSurface X = load_surface(scan_in);
      ScanResult res = scan(X, scan_r, interval_from(scan_from, scan_to));
      std::ofstream f;
      write_scan_csv(open_out(scan_out, f), res);
      std::fprintf(stderr, "%zu connections, %llu nodes, %llu thin sectors dropped, %llu boundary hits\n", res.size(),
                   static_cast<unsigned long long>(res.nodes), static_cast<unsigned long long>(res.dropped_sectors),
                   static_cast<unsigned long long>(res.boundary_hits));
    } else if (*sys) {
      TranslationSurface X = load_surface(sys_in);
      if (sys_norm) X = normalize_area(X);
      Systole s = systole(X);
      std::printf("systole %s holonomy (%s, %s) bound %s\n", format_double(s.length).c_str(),
                  format_double(s.connection.holonomy.x).c_str(), format_double(s.connection.holonomy.y).c_str(),
                  format_double(systole_bound(X)).c_str());
    } else if (*cyl) {
      TranslationSurface X = load_surface(cyl_in);
      CylinderDecomposition cd = cylinder_decomposition(X, parse_angle(cyl_dir));
      std::printf("direction %s: %zu cylinders, %zu saddle connections, total area %s (surface %s)\n",
                  format_double(cd.direction).c_str(), cd.cylinders.size(), cd.connections.size(),
                  format_double(cd.total_area()).c_str(), format_double(X.area()).c_str());
      std::printf("circumference,height,area\n");
      for (const auto& c : cd.cylinders)
        std::printf("%s,%s,%s\n", format_double(c.circumference).c_str(), format_double(c.height).c_str(),
                    format_double(c.area()).c_str());
    } else if (*mea) {
      TranslationSurface X = load_surface(mea_in);
      AngleInterval I = interval_from(mea_from, mea_to);
      MeasureReport rep = measure_report(X, mea_r, mea_grid, mea_bins, I);
      write_report_text(std::cout, rep);
      if (!mea_out.empty()) {
        std::ofstream f;
        write_report_csv(open_out(mea_out, f), rep);
      }
      if (!mea_cells.empty()) {
        std::ofstream f;
        write_surface_measure_csv(open_out(mea_cells, f), surface_measure(X, mea_r, mea_grid));
      }
    } else if (*plt) {
      TranslationSurface X = load_surface(plt_in);
      spec.outlines = !no_outlines;
      std::ofstream f;
      open_out(plt_out, f) << render_svg(X, spec);
    } else if (*cir) {
      TranslationSurface X = load_surface(cir_in);
      cp.interval = interval_from(cir_from, cir_to);
      cir_nodes_set = nodes_opt->count() > 0;
      if (!cir_nodes_set) cp.n = std::max(16, static_cast<int>(std::ceil(cp.recommended_nodes())));
      CircleIntegral ci = circle_integral(X, cp);
      std::printf("integral %s over %d nodes\n", format_double(ci.value).c_str(), cp.n);
      if (ci.under_resolved)
        std::fprintf(stderr, "warning: %d nodes is below 64 e^T |I| = %.0f; the estimate may be under-resolved\n",
                     cp.n, cp.recommended_nodes());
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
  return 0;
}
