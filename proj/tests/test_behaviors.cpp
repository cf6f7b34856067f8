#include <gtest/gtest.h>

#include <random>

#include "giant/behaviors.hpp"
#include "giant/world.hpp"

using namespace giant;

namespace {

RobotState robot_at(Vec2 p, double heading) {
  RobotState r;
  r.pose = {p, heading};
  return r;
}

}  // namespace

TEST(RandomWalk, OpenSpaceDrivesStraight) {
  const RobotState r = robot_at({0.5, 0.5}, 0.0);
  RngStream rng(1, 0);
  const auto out = random_walk_step(r, {}, rng, {});
  EXPECT_EQ(out.command, (VelocityCommand{0.05, 0.0}));
  EXPECT_FALSE(out.avoid.heading.has_value());
}

TEST(RandomWalk, WallPointAheadRotatesInPlace) {
  const RobotState r = robot_at({0.5, 0.5}, 0.0);
  const std::vector<Vec2> pts{{0.55, 0.5}};
  RngStream rng(1, 0);
  const auto out = random_walk_step(r, {pts, {}, nullptr}, rng, {});
  EXPECT_EQ(out.command.forward_speed, 0.0);
  EXPECT_GT(std::abs(out.command.turn_rate), 0.0);
}

TEST(RandomWalk, HeldHeadingIsKeptUntilReached) {
  RobotState r = robot_at({0.5, 0.5}, 0.0);
  r.blocked = true;
  r.avoid.heading = 1.0;
  RngStream rng(1, 0);
  const auto out = random_walk_step(r, {}, rng, {});
  EXPECT_EQ(out.avoid.heading, 1.0);
  EXPECT_DOUBLE_EQ(out.command.turn_rate, kPi);  // 1.0 / dt exceeds the turn limit
}

TEST(Cone, IgnoresObstaclesBehindAndOutOfRange) {
  const RobotState r = robot_at({0.5, 0.5}, 0.0);
  const std::vector<Vec2> behind{{0.45, 0.5}};
  const std::vector<Vec2> far{{0.5 + 3.0 * 0.055 + 0.001, 0.5}};
  const std::vector<Vec2> wide{{0.55, 0.55}};  // 45 degrees off axis
  EXPECT_FALSE(cone_blocked(r, {behind, {}, nullptr}, {}));
  EXPECT_FALSE(cone_blocked(r, {far, {}, nullptr}, {}));
  EXPECT_FALSE(cone_blocked(r, {wide, {}, nullptr}, {}));
  const std::vector<Vec2> ahead{{0.6, 0.52}};
  EXPECT_TRUE(cone_blocked(r, {ahead, {}, nullptr}, {}));
  EXPECT_FALSE(cone_blocked(r, {ahead, {}, nullptr}, {}, 0.05));
}

TEST(Cone, RobotDiscsAndArenaBoundary) {
  const RobotState r = robot_at({0.5, 0.5}, 0.0);
  ObstacleSet discs{{}, {{{0.62, 0.5}, 0.037}}, nullptr};
  EXPECT_TRUE(cone_blocked(r, discs, {}));
  const ArenaSpec arena{1.0, 1.0, {}};
  const RobotState edge = robot_at({0.9, 0.5}, 0.0);
  EXPECT_TRUE(cone_blocked(edge, {{}, {}, &arena}, {}));
  const RobotState inward = robot_at({0.9, 0.5}, kPi);
  EXPECT_FALSE(cone_blocked(inward, {{}, {}, &arena}, {}));
}

TEST(Expand, UniformSubdivision) {
  const auto pts = expand_wall_points({0, 0}, {1, 0}, 0.25);
  const std::vector<Vec2> want{{0, 0}, {0.25, 0}, {0.5, 0}, {0.75, 0}, {1, 0}};
  ASSERT_EQ(pts.size(), want.size());
  for (std::size_t k = 0; k < want.size(); ++k) {
    EXPECT_NEAR(pts[k].x, want[k].x, 1e-15);
    EXPECT_NEAR(pts[k].y, want[k].y, 1e-15);
  }
}

TEST(Expand, ShortSegmentGivesEndpoints) {
  const auto pts = expand_wall_points({0, 0}, {0.03, 0.04}, 0.055);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts.front(), (Vec2{0, 0}));
  EXPECT_EQ(pts.back(), (Vec2{0.03, 0.04}));
  EXPECT_EQ(expand_wall_points({0, 0}, {0.055, 0}, 0.055).size(), 2u);
}

TEST(Expand, DegenerateInputThrows) {
  EXPECT_THROW(expand_wall_points({1, 1}, {1, 1}, 0.05), std::invalid_argument);
  EXPECT_THROW(expand_wall_points({0, 0}, {1, 0}, 0.0), std::invalid_argument);
  EXPECT_THROW(expand_wall_points({0, 0}, {1, 0}, -1.0), std::invalid_argument);
  EXPECT_THROW(expand_wall_points({0, 0}, {NAN, 0}, 0.05), std::invalid_argument);
}

// Property suite: random segments and radii.
TEST(Expand, RandomSegmentProperties) {
  std::mt19937_64 gen(12345);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  std::uniform_real_distribution<double> log_r(std::log(0.005), std::log(2.0));
  for (int trial = 0; trial < 500; ++trial) {
    const Vec2 a{coord(gen), coord(gen)};
    const Vec2 b{coord(gen), coord(gen)};
    const double avoid = std::exp(log_r(gen));
    const auto pts = expand_wall_points(a, b, avoid);
    const double len = distance(a, b);
    ASSERT_EQ(pts.front(), a);
    ASSERT_EQ(pts.back(), b);
    // Fewest points that keep every gap within the radius.
    const auto minimal = static_cast<std::size_t>(std::ceil(len / std::min(avoid, len) - 1e-12)) + 1;
    ASSERT_LE(pts.size(), minimal + 1);
    ASSERT_GE(pts.size(), 2u);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      ASSERT_LE(point_segment_distance(pts[k], a, b), 1e-9);
      if (k > 0) ASSERT_LE(distance(pts[k - 1], pts[k]), avoid + 1e-12);
    }
  }
}

TEST(Goto, AlignedDrivesAtFullSpeed) {
  const RobotState r = robot_at({0, 0}, 0.0);
  RngStream rng(1, 0);
  const auto out = goto_target_step(r, {1, 0}, {}, rng, {});
  EXPECT_EQ(out.command, (VelocityCommand{0.05, 0.0}));
}

TEST(Goto, TargetBehindRotatesAtMaxRate) {
  const RobotState r = robot_at({0, 0}, 0.0);
  RngStream rng(1, 0);
  const auto out = goto_target_step(r, {-1, 0}, {}, rng, {});
  EXPECT_EQ(out.command.forward_speed, 0.0);
  EXPECT_DOUBLE_EQ(std::abs(out.command.turn_rate), kPi);
}

TEST(Goto, RotateThreshold) {
  RngStream rng(1, 0);
  const BehaviorParams p;
  // 40 degrees off: drive; 50 degrees off: rotate in place.
  const auto drive = goto_target_step(robot_at({0, 0}, 0.0), unit_from_angle(40.0 * kPi / 180.0), {}, rng, p);
  const auto turn = goto_target_step(robot_at({0, 0}, 0.0), unit_from_angle(50.0 * kPi / 180.0), {}, rng, p);
  EXPECT_EQ(drive.command.forward_speed, 0.05);
  EXPECT_EQ(turn.command.forward_speed, 0.0);
}

TEST(Goto, ObstacleBeyondTargetIsIgnored) {
  const RobotState r = robot_at({0, 0}, 0.0);
  const std::vector<Vec2> pts{{0.15, 0.0}};
  RngStream rng(1, 0);
  const auto out = goto_target_step(r, {0.1, 0}, {pts, {}, nullptr}, rng, {});
  EXPECT_EQ(out.command.forward_speed, 0.05);
}

TEST(Goto, BlockedStartsDetour) {
  const RobotState r = robot_at({0, 0}, 0.0);
  const std::vector<Vec2> pts{{0.05, 0.0}};
  RngStream rng(1, 0);
  const auto out = goto_target_step(r, {1, 0}, {pts, {}, nullptr}, rng, {});
  EXPECT_EQ(out.command.forward_speed, 0.0);
  EXPECT_TRUE(out.avoid.heading.has_value());
  EXPECT_EQ(out.avoid.detour_ticks, 20);  // 1 s at 20 Hz
}

TEST(FormationSlots, EvenSpacingInBearingOrder) {
  const std::vector<std::pair<int, double>> b{{7, 0.1}, {2, 1.7}, {9, 3.2}, {4, 4.8}};
  const auto slots = formation_slots(b);
  ASSERT_EQ(slots.size(), 4u);
  EXPECT_DOUBLE_EQ(slots.at(7), 0.0);
  EXPECT_DOUBLE_EQ(slots.at(2), kPi / 2);
  EXPECT_DOUBLE_EQ(slots.at(9), kPi);
  EXPECT_DOUBLE_EQ(slots.at(4), 3 * kPi / 2);
}

TEST(FormationSlots, EdgeCases) {
  EXPECT_TRUE(formation_slots({}).empty());
  const std::vector<std::pair<int, double>> one{{5, 2.0}};
  EXPECT_EQ(formation_slots(one).at(5), 0.0);
  const std::vector<std::pair<int, double>> tie{{8, 1.0}, {3, 1.0}};
  const auto s = formation_slots(tie);
  EXPECT_LT(s.at(3), s.at(8));
  // Negative bearings are taken modulo 2 pi.
  const std::vector<std::pair<int, double>> neg{{1, -0.1}, {2, 0.1}};
  const auto n = formation_slots(neg);
  EXPECT_DOUBLE_EQ(n.at(2), 0.0);
  EXPECT_DOUBLE_EQ(n.at(1), kPi);
}

TEST(FormationStep, SteadyStateOnReference) {
  const FormationParams p;
  RobotState r = robot_at({0.3, 0.0}, kPi / 2);
  const auto cmd = formation_step(r, {0, 0}, 0.0, p, 0.0);
  EXPECT_NEAR(cmd.forward_speed, p.ring_radius * p.angular_speed, 1e-12);
  EXPECT_NEAR(cmd.turn_rate, p.angular_speed, 1e-12);
}

TEST(FormationStep, ReferenceRotatesWithTime) {
  const FormationParams p;
  const double t = 5.0;
  const double phase = p.angular_speed * t;
  RobotState r = robot_at(Vec2{0.3 * std::cos(phase), 0.3 * std::sin(phase)}, phase + kPi / 2);
  const auto cmd = formation_step(r, {0, 0}, 0.0, p, t);
  EXPECT_NEAR(cmd.forward_speed, 0.03, 1e-12);
}

TEST(FormationStep, CommandsAreClamped) {
  FormationParams p;
  p.gain_radial = 100.0;
  RobotState r = robot_at({2.0, 0.0}, kPi);
  const auto cmd = formation_step(r, {0, 0}, 0.0, p, 0.0);
  EXPECT_LE(cmd.forward_speed, r.max_speed);
  EXPECT_LE(std::abs(cmd.turn_rate), r.max_turn_rate);
}
