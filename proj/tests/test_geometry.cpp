#include <gtest/gtest.h>

#include <random>

#include "giant/geometry.hpp"
#include "giant/hash.hpp"

using namespace giant;

TEST(Geometry, WrapAngleRange) {
  EXPECT_DOUBLE_EQ(wrap_angle(0.0), 0.0);
  EXPECT_DOUBLE_EQ(wrap_angle(kPi), -kPi);
  EXPECT_DOUBLE_EQ(wrap_angle(-kPi), -kPi);
  EXPECT_NEAR(wrap_angle(3.0 * kPi / 2.0), -kPi / 2.0, 1e-12);
  std::mt19937 gen(1);
  std::uniform_real_distribution<double> d(-50.0, 50.0);
  for (int k = 0; k < 2000; ++k) {
    const double a = d(gen);
    const double w = wrap_angle(a);
    ASSERT_GE(w, -kPi);
    ASSERT_LT(w, kPi);
    // Same direction as the input.
    ASSERT_NEAR(std::cos(w), std::cos(a), 1e-9);
    ASSERT_NEAR(std::sin(w), std::sin(a), 1e-9);
  }
}

TEST(Geometry, PointSegmentDistance) {
  EXPECT_DOUBLE_EQ(point_segment_distance({0.5, 1.0}, {0, 0}, {1, 0}), 1.0);
  EXPECT_DOUBLE_EQ(point_segment_distance({-3.0, 4.0}, {0, 0}, {1, 0}), 5.0);
  EXPECT_DOUBLE_EQ(point_segment_distance({2.0, 0.0}, {1, 1}, {1, 1}), std::hypot(1.0, 1.0));
}

TEST(Geometry, SegmentSegmentDistance) {
  EXPECT_DOUBLE_EQ(segment_segment_distance({0, 0}, {1, 1}, {0, 1}, {1, 0}), 0.0);
  EXPECT_DOUBLE_EQ(segment_segment_distance({0, 0}, {1, 0}, {0, 0.5}, {1, 0.5}), 0.5);
  EXPECT_DOUBLE_EQ(segment_segment_distance({0, 0}, {1, 0}, {2, 0}, {3, 0}), 1.0);
  // T-junction: endpoint touching the other segment.
  EXPECT_DOUBLE_EQ(segment_segment_distance({0, 0}, {2, 0}, {1, 0}, {1, 1}), 0.0);
}

TEST(Geometry, RectContainsIsClosed) {
  const Rect r{{0, 0}, {1, 2}};
  EXPECT_TRUE(r.contains({0, 0}));
  EXPECT_TRUE(r.contains({1, 2}));
  EXPECT_FALSE(r.contains({1.0000001, 1}));
  EXPECT_EQ(r.center(), (Vec2{0.5, 1.0}));
}

TEST(Hash, Fnv1aKnownValues) {
  // Published FNV-1a 64 test vectors.
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ull);
  EXPECT_EQ(hex64(0xaf63dc4c8601ec8cull), "af63dc4c8601ec8c");
  EXPECT_EQ(hex64(1), "0000000000000001");
}
