#include <gtest/gtest.h>

#include <numeric>

#include "helpers.hpp"

using namespace flatscan;

namespace {

std::vector<std::pair<double, double>> sorted_cylinders(const CylinderDecomposition& cd) {
  std::vector<std::pair<double, double>> out;
  for (const auto& c : cd.cylinders) out.push_back({c.circumference, c.height});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Cylinders, TorusHorizontal) {
  auto cd = cylinder_decomposition(square_torus(), 0.0);
  ASSERT_EQ(cd.cylinders.size(), 1u);
  EXPECT_NEAR(cd.cylinders[0].circumference, 1.0, 1e-12);
  EXPECT_NEAR(cd.cylinders[0].height, 1.0, 1e-12);
  EXPECT_EQ(cd.connections.size(), 1u);
}

TEST(Cylinders, TorusRationalDirections) {
  // direction (p, q): one cylinder of circumference |(p,q)| and height 1/|(p,q)|
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 3}, {-2, 3}, {3, -5}}) {
    double len = std::hypot(p, q);
    auto cd = cylinder_decomposition(square_torus(), std::atan2(q, p));
    ASSERT_EQ(cd.cylinders.size(), 1u);
    EXPECT_NEAR(cd.cylinders[0].circumference, len, 1e-9);
    EXPECT_NEAR(cd.cylinders[0].height, 1.0 / len, 1e-9);
    for (const auto& s : cd.connections) EXPECT_NEAR(cross(s.holonomy, {double(p), double(q)}), 0.0, 1e-9);
  }
}

TEST(Cylinders, OctagonHorizontal) {
  auto X = regular_octagon();
  auto cd = cylinder_decomposition(X, 0.0);
  ASSERT_EQ(cd.cylinders.size(), 2u);
  EXPECT_NEAR(cd.total_area(), 2 * (1 + std::sqrt(2.0)), 1e-6 * area(X));
  // middle rectangle 1+sqrt2 by 1; the two trapezoids glued along the unit sides
  auto cyl = sorted_cylinders(cd);
  double a = std::sqrt(2.0) / 2;
  EXPECT_NEAR(cyl[0].first, 1 + std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(cyl[0].second, 1.0, 1e-9);
  EXPECT_NEAR(cyl[1].first, 2 + std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(cyl[1].second, a, 1e-9);
  for (const auto& c : cd.cylinders) {
    EXPECT_FALSE(c.bottom.empty());
    EXPECT_FALSE(c.top.empty());
    for (int id : c.bottom) EXPECT_NEAR(cd.connections[id].holonomy.y, 0.0, 1e-9);
  }
  // three horizontal saddle connections, one per 2pi-sector
  EXPECT_EQ(cd.connections.size(), 3u);
}

TEST(Cylinders, OctagonDiagonalMatchesHorizontalBySymmetry) {
  auto X = regular_octagon();
  auto h = sorted_cylinders(cylinder_decomposition(X, 0.0));
  auto d = sorted_cylinders(cylinder_decomposition(X, kPi / 4));
  ASSERT_EQ(h.size(), d.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    EXPECT_NEAR(h[k].first, d[k].first, 1e-9);
    EXPECT_NEAR(h[k].second, d[k].second, 1e-9);
  }
}

TEST(Cylinders, AreaSumsOnUnfoldings) {
  auto X = unfold(triangle_from_angles({1, 2}, {1, 8}, {3, 8}));
  for (double th : {0.0, kPi / 8, kPi / 4, kPi / 2}) {
    auto cd = cylinder_decomposition(X, th);
    EXPECT_NEAR(cd.total_area(), area(X), 1e-6 * area(X)) << th;
    for (const auto& c : cd.cylinders) EXPECT_LE(c.area(), area(X) * (1 + 1e-9));
  }
}

TEST(Cylinders, IrrationalDirectionOnTorus) {
  try {
    cylinder_decomposition(square_torus(), std::atan((1 + std::sqrt(5.0)) / 2), 200.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPeriodicDirection);
  }
}

TEST(Cylinders, RotatedSurfaceKeepsDecomposition) {
  auto X = apply(regular_octagon(), r(0.3));
  auto cd = cylinder_decomposition(X, 0.3);
  EXPECT_EQ(cd.cylinders.size(), 2u);
  EXPECT_NEAR(cd.total_area(), area(X), 1e-6 * area(X));
}
