#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "giant/behaviors.hpp"
#include "giant/command.hpp"
#include "giant/geometry.hpp"
#include "giant/rng.hpp"

namespace giant {

class WorldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ArenaSpec {
  double width = 0.9;
  double height = 1.5;
  Vec2 origin;

  Rect rect() const { return {origin, origin + Vec2{width, height}}; }
  bool contains(Vec2 p) const { return rect().contains(p); }
  // True when a disc of `radius` centred at p is fully inside.
  bool contains_disc(Vec2 p, double radius) const {
    const Rect r = rect();
    return p.x - radius >= r.min.x && p.x + radius <= r.max.x && p.y - radius >= r.min.y &&
           p.y + radius <= r.max.y;
  }
  Vec2 clamp(Vec2 p, double margin = 0.0) const;
  bool operator==(const ArenaSpec&) const = default;
};

struct RobotDefaults {
  double radius = 0.037;
  double max_speed = 0.05;
  double max_turn_rate = kPi;
  double avoid_radius = 0.055;
};

struct WallSegment {
  int id = 0;
  Vec2 a;
  Vec2 b;
  std::int64_t ordinal = 0;
  bool operator==(const WallSegment&) const = default;
};

// Permanent scenario walls. Robots expand them exactly like operator walls
// but undo never touches them.
struct Fixture {
  Vec2 a;
  Vec2 b;
  bool operator==(const Fixture&) const = default;
};

enum class CubeStatus { Inactive, Placed };

struct ControlCube {
  Vec2 position;
  CubeStatus status = CubeStatus::Inactive;
  double placed_time = 0.0;
  bool operator==(const ControlCube&) const = default;
};

struct RegionSpec {
  int id = 0;
  std::string name;
  Rect rect;
  bool operator==(const RegionSpec&) const = default;
};

struct RobotState {
  int id = 0;
  Pose pose;
  double radius = 0.037;
  double max_speed = 0.05;
  double max_turn_rate = kPi;
  double avoid_radius = 0.055;
  Mode mode = Mode::Autonomous;
  Vec2 target;               // meaningful in GoToTarget
  bool target_clamped = false;
  bool holding = false;      // arrived and holding (post_arrival = hold)
  double formation_slot = 0.0;
  AvoidState avoid;
  bool blocked = false;      // last proposed translation was rejected
  std::vector<Vec2> blocking_points;
};

struct WorldConfig {
  ArenaSpec arena;
  double dt = 0.05;
  std::uint64_t seed = 0;
  RobotDefaults robot;
  BehaviorParams behavior;
  std::vector<Fixture> fixtures;
  std::vector<RegionSpec> regions;
};

struct RobotView {
  int id = 0;
  Pose pose;
  double radius = 0.0;
  Mode mode = Mode::Autonomous;
  std::optional<Vec2> target;
  bool operator==(const RobotView&) const = default;
};

struct RegionCount {
  int id = 0;
  Rect rect;
  int count = 0;
  bool operator==(const RegionCount&) const = default;
};

// Immutable value copy of the world for observers.
struct Snapshot {
  std::int64_t tick = 0;
  double dt = 0.05;
  ArenaSpec arena;
  std::vector<RobotView> robots;
  std::vector<WallSegment> walls;
  std::vector<Fixture> fixtures;
  ControlCube cube;
  std::vector<RegionCount> regions;

  double time() const { return static_cast<double>(tick) * dt; }
  const RobotView* robot(int id) const;
  bool operator==(const Snapshot&) const = default;
};

class World {
 public:
  explicit World(WorldConfig config);

  // Appends a robot in Autonomous mode using the configured defaults.
  int spawn_robot(Pose pose, std::optional<double> radius = std::nullopt);
  int add_wall(Vec2 a, Vec2 b);
  void undo_wall();

  // Applies commands in order, then advances every robot one tick.
  std::vector<CommandResult> step(std::span<const Command> commands = {});

  // Applies one command outside the tick loop (scenario setup, tests).
  CommandResult apply_command(const Command& c) { return apply(c); }

  Snapshot snapshot() const;

  std::int64_t tick() const { return tick_; }
  double dt() const { return config_.dt; }
  double time() const { return static_cast<double>(tick_) * config_.dt; }
  const WorldConfig& config() const { return config_; }
  const std::vector<RobotState>& robots() const { return robots_; }
  const std::vector<WallSegment>& walls() const { return walls_; }
  const ControlCube& cube() const { return cube_; }
  const RobotState* find_robot(int id) const;

  // True when a disc of `radius` at p clears every wall, fixture, robot and
  // the arena boundary.
  bool is_free(Vec2 p, double radius, double avoid_radius, int ignore_id = -1) const;

 private:
  CommandResult apply(const Command& c);
  void rebuild_blocking_points();
  void rebuild_blocking_points(RobotState& r) const;
  void place_cube(Vec2 pos);
  bool admissible(const RobotState& r, Vec2 from, Vec2 to) const;
  RobotState* find_robot_mut(int id);

  WorldConfig config_;
  std::int64_t tick_ = 0;
  std::vector<RobotState> robots_;
  std::vector<RngStream> rngs_;
  std::vector<WallSegment> walls_;
  std::int64_t next_ordinal_ = 0;
  int next_wall_id_ = 0;
  ControlCube cube_;
};

// Counts robots whose centre lies in each region.
std::vector<RegionCount> count_regions(std::span<const RegionSpec> regions,
                                       std::span<const RobotView> robots);

}  // namespace giant
