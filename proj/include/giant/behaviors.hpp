#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "giant/geometry.hpp"
#include "giant/rng.hpp"

namespace giant {

struct ArenaSpec;
struct RobotState;

enum class Mode { Autonomous, GoToTarget, Formation };

enum class PostArrival { Resume, Hold };

struct VelocityCommand {
  double forward_speed = 0.0;
  double turn_rate = 0.0;
  bool operator==(const VelocityCommand&) const = default;
};

struct Disc {
  Vec2 center;
  double radius = 0.0;
};

// Obstacles as seen by one robot. `points` are that robot's own derived wall
// blocking points and must outlive the set.
struct ObstacleSet {
  std::span<const Vec2> points;
  std::vector<Disc> discs;
  const ArenaSpec* boundary = nullptr;
};

struct FormationParams {
  double ring_radius = 0.3;
  double angular_speed = 0.1;
  double gain_heading = 4.0;
  double gain_radial = 0.5;
};

struct BehaviorParams {
  double dt = 0.05;
  double lookahead_factor = 3.0;        // cone range = factor * avoid_radius
  double lookahead_half_angle = kPi / 6;
  double goto_gain = 4.0;
  double goto_rotate_threshold = kPi / 4;
  double arrival_factor = 1.5;          // arrival when distance <= factor * radius
  double detour_time = 1.0;
  PostArrival post_arrival = PostArrival::Resume;
  FormationParams formation;
  double formation_join_factor = 5.0;   // join radius = factor * ring_radius
};

// Avoidance sub-state carried between ticks.
struct AvoidState {
  std::optional<double> heading;  // held random heading while blocked
  int detour_ticks = 0;
  bool operator==(const AvoidState&) const = default;
};

struct ControlOutput {
  VelocityCommand command;
  AvoidState avoid;
};

// True if an obstacle lies in the robot's lookahead cone, ignoring anything
// farther than `max_range` (when given).
bool cone_blocked(const RobotState& robot, const ObstacleSet& obstacles, const BehaviorParams& params,
                  std::optional<double> max_range = std::nullopt);

ControlOutput random_walk_step(const RobotState& robot, const ObstacleSet& obstacles, RngStream& rng,
                               const BehaviorParams& params);

// Endpoints plus evenly spaced interior points, spacing <= avoid_radius.
// Throws std::invalid_argument on a degenerate segment or radius.
std::vector<Vec2> expand_wall_points(Vec2 a, Vec2 b, double avoid_radius);

ControlOutput goto_target_step(const RobotState& robot, Vec2 target, const ObstacleSet& obstacles,
                               RngStream& rng, const BehaviorParams& params);

// Evenly spaced slot angles assigned in bearing order (ties by id).
std::map<int, double> formation_slots(std::span<const std::pair<int, double>> bearings);

VelocityCommand formation_step(const RobotState& robot, Vec2 center, double slot,
                               const FormationParams& params, double t);

VelocityCommand clamp_command(const RobotState& robot, VelocityCommand cmd);

}  // namespace giant
