#include <gtest/gtest.h>

#include <random>

#include "flatscan/geometry.hpp"
#include "flatscan/parse.hpp"

using namespace flatscan;

TEST(AngleInterval, HalfOpen) {
  AngleInterval q(0.0, kPi / 2);
  EXPECT_TRUE(q.contains(0.0));
  EXPECT_FALSE(q.contains(kPi / 2));
  EXPECT_TRUE(q.contains(kPi / 2 - 1e-12));
  EXPECT_FALSE(q.contains(kPi));
}

TEST(AngleInterval, WrapsAroundZero) {
  AngleInterval w(-kPi / 4, kPi / 2);
  EXPECT_TRUE(w.contains(0.0));
  EXPECT_TRUE(w.contains(kTwoPi - 0.1));
  EXPECT_FALSE(w.contains(kPi / 4));
  EXPECT_NEAR(w.length(), kPi / 2, 1e-15);
}

TEST(AngleInterval, FullAndEmpty) {
  EXPECT_TRUE(AngleInterval::full().contains(3.0));
  EXPECT_FALSE(AngleInterval::empty().contains(3.0));
  EXPECT_EQ(AngleInterval::empty().length(), 0.0);
  EXPECT_EQ(AngleInterval::full().length(), kTwoPi);
  EXPECT_TRUE(AngleInterval::between(1.0, 1.0).is_empty());
}

TEST(AngleInterval, PartitionCoversEachAngleOnce) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (int n : {3, 7, 8, 360}) {
    std::vector<double> cuts;
    for (int k = 0; k < n; ++k) cuts.push_back(u(rng));
    std::sort(cuts.begin(), cuts.end());
    std::vector<AngleInterval> parts;
    for (int k = 0; k < n; ++k) parts.push_back(AngleInterval::between(cuts[k], cuts[(k + 1) % n]));
    for (int s = 0; s < 2000; ++s) {
      double th = s < 2 * n ? cuts[s % n] : u(rng);
      int hits = 0;
      for (const auto& p : parts) hits += p.contains(th);
      ASSERT_EQ(hits, 1) << th;
    }
  }
}

TEST(AngleInterval, MeetsArc) {
  AngleInterval q(0.0, 0.5);
  EXPECT_TRUE(q.meets_arc(0.4, 0.3, 0.0));
  EXPECT_TRUE(q.meets_arc(6.0, 0.4, 0.0));
  EXPECT_FALSE(q.meets_arc(1.0, 0.3, 0.0));
  EXPECT_TRUE(q.meets_arc(0.6, 0.3, 0.2));
}

TEST(Geometry, WrapAndAngle) {
  EXPECT_EQ(wrap_angle(kTwoPi), 0.0);
  EXPECT_NEAR(wrap_angle(-kPi / 2), 1.5 * kPi, 1e-15);
  EXPECT_NEAR(angle_of({0, -1}), 1.5 * kPi, 1e-15);
  EXPECT_EQ(angle_of({1, 0}), 0.0);
  EXPECT_EQ(angle_of({1, -0.0}), 0.0);
}

TEST(Geometry, SegmentDistance) {
  EXPECT_NEAR(segment_distance2({1, -1}, {1, 1}), 1.0, 1e-15);
  EXPECT_NEAR(segment_distance2({2, 0}, {3, 0}), 4.0, 1e-15);
}

TEST(ParseAngle, Forms) {
  EXPECT_DOUBLE_EQ(parse_angle("0.25"), 0.25);
  EXPECT_DOUBLE_EQ(parse_angle("pi"), kPi);
  EXPECT_DOUBLE_EQ(parse_angle("pi/8"), kPi / 8);
  EXPECT_DOUBLE_EQ(parse_angle("-pi/4"), -kPi / 4);
  EXPECT_DOUBLE_EQ(parse_angle("3pi/8"), 3 * kPi / 8);
  EXPECT_DOUBLE_EQ(parse_angle("3*pi/8"), 3 * kPi / 8);
  EXPECT_DOUBLE_EQ(parse_angle("PI/2"), kPi / 2);
  EXPECT_DOUBLE_EQ(parse_angle("pi*0.5"), kPi / 2);
}

TEST(ParseAngle, Rejects) {
  for (const char* bad : {"", "pie", "pi/0", "x", "1/8", "pi/"}) {
    try {
      parse_angle(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    }
  }
}
