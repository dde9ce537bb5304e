#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "flatscan/errors.hpp"
#include "flatscan/scan.hpp"
#include "flatscan/surface.hpp"

namespace flatscan {

// Text format, one record per line; blank lines and lines starting with '#' are skipped.
//
//   flatscan-surface 1
//   polygons 1
//   polygon 0 (1, 0) (0, 1) (-1, 0) (0, -1)
//   gluings 2
//   glue (0.0 ~ 0.2)
//   glue (0.1 ~ 0.3)
//
// Numbers are written with 17 significant digits so a read-write cycle is byte-identical.

inline void write_description(std::ostream& os, const SurfaceDescription& d) {
  os << "flatscan-surface 1\n";
  os << "polygons " << d.polygons.size() << '\n';
  for (std::size_t p = 0; p < d.polygons.size(); ++p) {
    os << "polygon " << p;
    for (auto v : d.polygons[p]) os << " (" << format_double(v.x) << ", " << format_double(v.y) << ')';
    os << '\n';
  }
  os << "gluings " << d.gluings.size() << '\n';
  for (const auto& g : d.gluings)
    os << "glue (" << g.a.polygon << '.' << g.a.side << " ~ " << g.b.polygon << '.' << g.b.side << ")\n";
}

inline std::string description_to_string(const SurfaceDescription& d) {
  std::ostringstream os;
  write_description(os, d);
  return os.str();
}

namespace detail {

class LineParser {
 public:
  LineParser(const std::string& line, int lineno) : s_(line), lineno_(lineno) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno_) + ": " + what);
  }
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void keyword(const std::string& kw) {
    skip_ws();
    if (s_.compare(pos_, kw.size(), kw) != 0) fail("expected '" + kw + "'");
    pos_ += kw.size();
  }
  double number() {
    skip_ws();
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }
  long integer() {
    skip_ws();
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    long v = std::strtol(begin, &end, 10);
    if (end == begin) fail("expected an integer");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }
  PolygonSide side() {
    long p = integer();
    expect('.');
    long e = integer();
    return {static_cast<int>(p), static_cast<int>(e)};
  }

 private:
  const std::string& s_;
  int lineno_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline SurfaceDescription read_description(std::istream& is) {
  SurfaceDescription d;
  std::string line;
  int lineno = 0;
  auto next = [&]() -> bool {
    while (std::getline(is, line)) {
      ++lineno;
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next()) throw Error(ErrorKind::ParseError, "empty surface file");
  {
    detail::LineParser lp(line, lineno);
    lp.keyword("flatscan-surface");
    if (lp.integer() != 1) lp.fail("unsupported format version");
  }
  if (!next()) throw Error(ErrorKind::ParseError, "missing polygons record");
  long np;
  {
    detail::LineParser lp(line, lineno);
    lp.keyword("polygons");
    np = lp.integer();
    if (np < 1) lp.fail("need at least one polygon");
  }
  for (long p = 0; p < np; ++p) {
    if (!next()) throw Error(ErrorKind::ParseError, "missing polygon " + std::to_string(p));
    detail::LineParser lp(line, lineno);
    lp.keyword("polygon");
    if (lp.integer() != p) lp.fail("polygons must be numbered 0, 1, ... in order");
    std::vector<PlanarVector> edges;
    while (!lp.done()) {
      lp.expect('(');
      double x = lp.number();
      lp.expect(',');
      double y = lp.number();
      lp.expect(')');
      edges.push_back({x, y});
    }
    if (edges.size() < 3) lp.fail("polygon needs at least three edges");
    d.polygons.push_back(std::move(edges));
  }
  if (!next()) throw Error(ErrorKind::ParseError, "missing gluings record");
  long ng;
  {
    detail::LineParser lp(line, lineno);
    lp.keyword("gluings");
    ng = lp.integer();
    if (ng < 0) lp.fail("negative gluing count");
  }
  for (long k = 0; k < ng; ++k) {
    if (!next()) throw Error(ErrorKind::ParseError, "missing gluing " + std::to_string(k));
    detail::LineParser lp(line, lineno);
    lp.keyword("glue");
    lp.expect('(');
    PolygonSide a = lp.side();
    lp.expect('~');
    PolygonSide b = lp.side();
    lp.expect(')');
    if (!lp.done()) lp.fail("trailing characters");
    d.gluings.push_back({a, b});
  }
  if (next()) throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": unexpected trailing record");
  return d;
}

inline SurfaceDescription description_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_description(is);
}

inline SurfaceDescription load_description(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  return read_description(in);
}

inline void save_description(const std::string& path, const SurfaceDescription& d) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
  write_description(out, d);
}

inline TranslationSurface load_surface(const std::string& path) { return build_surface(load_description(path)); }

}  // namespace flatscan
