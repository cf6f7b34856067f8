#include <gtest/gtest.h>

#include "giant/mission.hpp"
#include "giant/scenario.hpp"

using namespace giant;

namespace {

MissionSpec three_rooms() {
  const Scenario s = parse_scenario(reference_mission_config());
  return *s.mission;
}

// Snapshot with the given number of robots parked in each room.
Snapshot with_counts(std::int64_t tick, const std::vector<int>& counts) {
  const MissionSpec spec = three_rooms();
  Snapshot s;
  s.tick = tick;
  int id = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const Vec2 c = spec.regions[i].rect.center();
    for (int k = 0; k < counts[i]; ++k) s.robots.push_back({id++, {c, 0.0}, 0.037, Mode::Autonomous, {}});
  }
  // Everybody else waits outside the rooms.
  while (id < 50) s.robots.push_back({id++, {{3.0, 1.0}, 0.0}, 0.037, Mode::Autonomous, {}});
  return s;
}

}  // namespace

TEST(Mission, SustainedDemandCompletes) {
  MissionState m = start_mission(three_rooms(), 0.05);
  for (std::int64_t t = 0; t <= 100; ++t) m = update(std::move(m), with_counts(t, {25, 15, 10}));
  ASSERT_TRUE(m.complete());
  EXPECT_EQ(*m.complete_tick, 100);  // 5 s at 20 Hz after first satisfied at tick 0
  EXPECT_NEAR(m.dwell[0], 5.0, 1e-12);
}

TEST(Mission, NotCompleteBeforeDwell) {
  MissionState m = start_mission(three_rooms(), 0.05);
  for (std::int64_t t = 0; t < 100; ++t) m = update(std::move(m), with_counts(t, {25, 15, 10}));
  EXPECT_FALSE(m.complete());
}

TEST(Mission, UnmetDemandResetsDwell) {
  MissionState m = start_mission(three_rooms(), 0.05);
  for (std::int64_t t = 0; t < 60; ++t) m = update(std::move(m), with_counts(t, {25, 15, 10}));
  EXPECT_GT(m.dwell[0], 0.0);
  m = update(std::move(m), with_counts(60, {25, 15, 9}));
  EXPECT_FALSE(m.complete());
  EXPECT_EQ(m.dwell[0], 0.0);
  EXPECT_FALSE(m.satisfied_since.has_value());
  for (std::int64_t t = 61; t < 140; ++t) m = update(std::move(m), with_counts(t, {25, 15, 10}));
  EXPECT_FALSE(m.complete());
  m = update(std::move(m), with_counts(161, {25, 15, 10}));
  EXPECT_TRUE(m.complete());
}

TEST(Mission, CompletionLatches) {
  MissionState m = start_mission(three_rooms(), 0.05);
  for (std::int64_t t = 0; t <= 100; ++t) m = update(std::move(m), with_counts(t, {25, 15, 10}));
  m = update(std::move(m), with_counts(101, {0, 0, 0}));
  EXPECT_TRUE(m.complete());
  EXPECT_EQ(m.counts, (std::vector<int>{0, 0, 0}));
}

// With 50 robots and demands 25/15/10 the only satisfying count vector is the
// exact one.
TEST(Mission, FeasibleCountVectors) {
  MissionState m = start_mission(three_rooms(), 0.05);
  int satisfying = 0;
  for (int a = 0; a <= 50; ++a) {
    for (int b = 0; a + b <= 50; ++b) {
      for (int c = 0; a + b + c <= 50; ++c) {
        m.counts = {a, b, c};
        const bool oracle = a >= 25 && b >= 15 && c >= 10;
        ASSERT_EQ(m.demands_met(), oracle) << a << "," << b << "," << c;
        if (oracle) {
          ++satisfying;
          EXPECT_EQ(m.counts, (std::vector<int>{25, 15, 10}));
        }
      }
    }
  }
  EXPECT_EQ(satisfying, 1);
}

TEST(Metrics, CompletionTimeArithmetic) {
  MissionState m = start_mission(three_rooms(), 0.05, 0);
  m.complete_tick = 6000;
  EXPECT_DOUBLE_EQ(*metrics(m, SessionState{}).completion_time, 300.0);
  m.start_tick = 1000;
  EXPECT_DOUBLE_EQ(*metrics(m, SessionState{}).completion_time, 250.0);
}

TEST(Metrics, IncompleteRunKeepsCounts) {
  MissionState m = start_mission(three_rooms(), 0.05);
  m = update(std::move(m), with_counts(5, {20, 3, 1}));
  SessionState s;
  record_command(s, 1, PlaceTarget{0, {1, 1}}, {});
  record_command(s, 2, DrawWall{{0, 0}, {1, 0}}, {});
  record_command(s, 3, PickTarget{0}, {});
  const Metrics out = metrics(m, s);
  EXPECT_FALSE(out.completion_time.has_value());
  EXPECT_EQ(out.interaction_count, 2);
  EXPECT_EQ(out.breakdown.at("PlaceTarget"), 1);
  EXPECT_EQ(out.breakdown.at("DrawWall"), 1);
  EXPECT_EQ(out.breakdown.count("PickTarget"), 0u);
  EXPECT_EQ(m.counts, (std::vector<int>{20, 3, 1}));
}

TEST(Metrics, SessionsAggregate) {
  MissionState m = start_mission({}, 0.05);
  SessionState a, b;
  record_command(a, 1, PlaceTarget{0, {1, 1}}, {});
  record_command(b, 1, UndoWall{}, {});
  record_command(b, 2, PlaceCube{{1, 1}}, {});
  EXPECT_EQ(metrics(m, std::vector<const SessionState*>{&a, &b}).interaction_count, 3);
}
