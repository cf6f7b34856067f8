#include <gtest/gtest.h>

#include "giant/interaction.hpp"

using namespace giant;

namespace {

Snapshot arena_snapshot() {
  Snapshot s;
  s.arena = {2.0, 2.0, {}};
  for (int id = 0; id < 5; ++id) s.robots.push_back({id, {{0.2 + 0.3 * id, 0.5}, 0.0}, 0.037, Mode::Autonomous, {}});
  return s;
}

}  // namespace

TEST(ApplyEvent, GraspMovesTarget) {
  SessionState s;
  const Snapshot snap = arena_snapshot();
  auto a = apply_event(s, event::GraspStart{ObjectRef::target_of(3)}, snap);
  ASSERT_EQ(a.commands.size(), 1u);
  EXPECT_EQ(a.commands[0], Command(PickTarget{3}));
  auto b = apply_event(s, event::GraspEnd{ObjectRef::target_of(3), {1.0, 0.5, 0.2}}, snap);
  ASSERT_EQ(b.commands.size(), 1u);
  EXPECT_EQ(b.commands[0], Command(PlaceTarget{3, {1.0, 0.5}}));
  EXPECT_TRUE(b.flags.empty());
}

TEST(ApplyEvent, ReleaseOutsideArenaClampedAndFlagged) {
  SessionState s;
  const Snapshot snap = arena_snapshot();
  apply_event(s, event::GraspStart{ObjectRef::target_of(1)}, snap);
  auto b = apply_event(s, event::GraspEnd{ObjectRef::target_of(1), {3.0, -1.0, 0.0}}, snap);
  ASSERT_EQ(b.commands.size(), 1u);
  const auto& pt = std::get<PlaceTarget>(b.commands[0]);
  EXPECT_NEAR(pt.pos.x, 2.0 - 0.037, 1e-12);
  EXPECT_NEAR(pt.pos.y, 0.037, 1e-12);
  EXPECT_FALSE(b.flags.empty());
}

TEST(ApplyEvent, UnknownRobotGraspIgnored) {
  SessionState s;
  auto a = apply_event(s, event::GraspStart{ObjectRef::target_of(42)}, arena_snapshot());
  EXPECT_TRUE(a.commands.empty());
  EXPECT_FALSE(s.held_object.has_value());
}

TEST(ApplyEvent, CubeGrasp) {
  SessionState s;
  const Snapshot snap = arena_snapshot();
  auto a = apply_event(s, event::GraspStart{ObjectRef::cube()}, snap);
  EXPECT_EQ(a.commands.at(0), Command(PickCube{}));
  auto b = apply_event(s, event::GraspEnd{ObjectRef::cube(), {1.0, 1.0, 0.3}}, snap);
  EXPECT_EQ(b.commands.at(0), Command(PlaceCube{{1.0, 1.0}}));
}

TEST(ApplyEvent, WallModePinchDrawsWall) {
  SessionState s;
  const Snapshot snap = arena_snapshot();
  auto t = apply_event(s, event::Touch{kDrawWallButton}, snap);
  EXPECT_TRUE(s.wall_mode);
  EXPECT_EQ(t.commands.at(0), Command(ToggleWallMode{}));
  EXPECT_TRUE(apply_event(s, event::PinchStart{Hand::Right, {0, 0, 0}}, snap).commands.empty());
  auto e = apply_event(s, event::PinchEnd{Hand::Right, {1, 0, 0}}, snap);
  ASSERT_EQ(e.commands.size(), 1u);
  EXPECT_EQ(e.commands[0], Command(DrawWall{{0, 0}, {1, 0}}));
}

TEST(ApplyEvent, PinchWithoutWallModeDoesNothing) {
  SessionState s;
  const Snapshot snap = arena_snapshot();
  EXPECT_TRUE(apply_event(s, event::PinchStart{Hand::Right, {0, 0, 0}}, snap).commands.empty());
  EXPECT_TRUE(apply_event(s, event::PinchEnd{Hand::Right, {1, 0, 0}}, snap).commands.empty());
}

TEST(ApplyEvent, DegenerateWallDiscarded) {
  SessionState s;
  s.wall_mode = true;
  const Snapshot snap = arena_snapshot();
  apply_event(s, event::PinchStart{Hand::Left, {0.5, 0.5, 0}}, snap);
  auto e = apply_event(s, event::PinchEnd{Hand::Left, {0.5002, 0.5, 0}}, snap);
  EXPECT_TRUE(e.commands.empty());
  ASSERT_EQ(e.flags.size(), 1u);
  EXPECT_EQ(s.interaction_count, 0);
}

TEST(ApplyEvent, OtherHandDoesNotCloseWall) {
  SessionState s;
  s.wall_mode = true;
  const Snapshot snap = arena_snapshot();
  apply_event(s, event::PinchStart{Hand::Left, {0.5, 0.5, 0}}, snap);
  EXPECT_TRUE(apply_event(s, event::PinchEnd{Hand::Right, {1.5, 0.5, 0}}, snap).commands.empty());
  EXPECT_EQ(apply_event(s, event::PinchEnd{Hand::Left, {1.5, 0.5, 0}}, snap).commands.size(), 1u);
}

TEST(ApplyEvent, UndoButton) {
  SessionState s;
  auto u = apply_event(s, event::Touch{kUndoWallButton}, arena_snapshot());
  EXPECT_EQ(u.commands.at(0), Command(UndoWall{}));
}

TEST(Counting, SummationOracle) {
  SessionState s;
  for (int k = 0; k < 5; ++k) s = count_interaction(s, PlaceTarget{k, {0.5, 0.5}});
  for (int k = 0; k < 2; ++k) s = count_interaction(s, DrawWall{{0, 0}, {1, 0}});
  EXPECT_EQ(s.interaction_count, 7);
}

TEST(Counting, TogglesExcludedByDefault) {
  SessionState s;
  for (int k = 0; k < 4; ++k) s = count_interaction(s, ToggleWallMode{});
  EXPECT_EQ(s.interaction_count, 0);
  s.rule.count_toggles = true;
  s = count_interaction(s, ToggleWallMode{});
  EXPECT_EQ(s.interaction_count, 1);
}

TEST(Counting, PicksNotCounted) {
  EXPECT_FALSE(counts_as_interaction(PickTarget{1}));
  EXPECT_FALSE(counts_as_interaction(PickCube{}));
  EXPECT_TRUE(counts_as_interaction(PlaceCube{{0, 0}}));
  EXPECT_TRUE(counts_as_interaction(UndoWall{}));
}

TEST(Counting, RejectedCommandsNotCounted) {
  SessionState s;
  record_command(s, 3, DrawWall{{0, 0}, {0, 0}}, {false, "degenerate wall segment"});
  EXPECT_EQ(s.interaction_count, 0);
  ASSERT_EQ(s.command_log.size(), 1u);
  EXPECT_FALSE(s.command_log[0].accepted);
  record_command(s, 4, DrawWall{{0, 0}, {1, 0}}, {});
  EXPECT_EQ(s.interaction_count, 1);
  EXPECT_EQ(s.command_log.back().interaction_count, 1);
  EXPECT_EQ(s.command_log.back().tick, 4);
}
