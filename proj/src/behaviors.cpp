#include "giant/behaviors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "giant/world.hpp"

namespace giant {
namespace {

bool in_cone(Vec2 from, double heading, Vec2 p, double range, double half_angle) {
  const Vec2 d = p - from;
  const double dist = d.norm();
  if (dist > range) return false;
  if (dist == 0.0) return true;
  return std::abs(wrap_angle(std::atan2(d.y, d.x) - heading)) <= half_angle;
}

double clampd(double v, double lim) { return std::clamp(v, -lim, lim); }

// Rotates toward the held heading, drawing a fresh one when none is held or
// the held one has been reached.
ControlOutput rotate_away(const RobotState& robot, RngStream& rng, const BehaviorParams& params,
                          int detour_ticks) {
  ControlOutput out;
  out.avoid.detour_ticks = detour_ticks;
  double target = robot.avoid.heading ? *robot.avoid.heading : rng.uniform(-kPi, kPi);
  double err = wrap_angle(target - robot.pose.heading);
  if (robot.avoid.heading && std::abs(err) < 1e-6) {
    target = rng.uniform(-kPi, kPi);
    err = wrap_angle(target - robot.pose.heading);
  }
  out.avoid.heading = target;
  out.command = {0.0, clampd(err / params.dt, robot.max_turn_rate)};
  return out;
}

}  // namespace

VelocityCommand clamp_command(const RobotState& robot, VelocityCommand cmd) {
  cmd.forward_speed = std::clamp(cmd.forward_speed, 0.0, robot.max_speed);
  cmd.turn_rate = clampd(cmd.turn_rate, robot.max_turn_rate);
  return cmd;
}

bool cone_blocked(const RobotState& robot, const ObstacleSet& obstacles, const BehaviorParams& params,
                  std::optional<double> max_range) {
  double range = params.lookahead_factor * robot.avoid_radius;
  if (max_range) range = std::min(range, *max_range);
  const double half = params.lookahead_half_angle;
  const Vec2 pos = robot.pose.position;
  const double heading = robot.pose.heading;

  for (const Vec2& p : obstacles.points) {
    if (in_cone(pos, heading, p, range, half)) return true;
  }
  for (const Disc& d : obstacles.discs) {
    const Vec2 rel = d.center - pos;
    const double surface = rel.norm() - d.radius;
    if (surface > range) continue;
    if (surface <= robot.radius) {
      // Touching: anything in the front half-plane blocks.
      if (dot(rel, unit_from_angle(heading)) > 0.0) return true;
      continue;
    }
    if (std::abs(wrap_angle(std::atan2(rel.y, rel.x) - heading)) <= half) return true;
  }
  if (obstacles.boundary != nullptr) {
    for (double delta : {-half, 0.0, half}) {
      const Vec2 probe = pos + unit_from_angle(heading + delta) * range;
      if (!obstacles.boundary->contains_disc(probe, robot.radius)) return true;
    }
  }
  return false;
}

ControlOutput random_walk_step(const RobotState& robot, const ObstacleSet& obstacles, RngStream& rng,
                               const BehaviorParams& params) {
  if (!robot.blocked && !cone_blocked(robot, obstacles, params)) {
    return {{robot.max_speed, 0.0}, {}};
  }
  return rotate_away(robot, rng, params, 0);
}

std::vector<Vec2> expand_wall_points(Vec2 a, Vec2 b, double avoid_radius) {
  if (!(avoid_radius > 0.0) || !std::isfinite(avoid_radius)) {
    throw std::invalid_argument("expand_wall_points: avoid_radius must be positive");
  }
  const double length = distance(a, b);
  if (!(length > 0.0) || !a.finite() || !b.finite()) {
    throw std::invalid_argument("expand_wall_points: degenerate segment");
  }
  const double spacing = std::min(avoid_radius, length);
  const auto intervals = static_cast<std::size_t>(std::ceil(length / spacing));
  std::vector<Vec2> points;
  points.reserve(intervals + 1);
  const Vec2 ab = b - a;
  for (std::size_t k = 0; k < intervals; ++k) {
    points.push_back(a + ab * (static_cast<double>(k) / static_cast<double>(intervals)));
  }
  points.push_back(b);
  return points;
}

ControlOutput goto_target_step(const RobotState& robot, Vec2 target, const ObstacleSet& obstacles,
                               RngStream& rng, const BehaviorParams& params) {
  const Vec2 to_target = target - robot.pose.position;
  const double dist = to_target.norm();
  const int detour = static_cast<int>(std::lround(params.detour_time / params.dt));

  if (robot.blocked || cone_blocked(robot, obstacles, params, dist)) {
    return rotate_away(robot, rng, params, detour);
  }
  ControlOutput out;
  if (robot.avoid.heading) {
    const double err = wrap_angle(*robot.avoid.heading - robot.pose.heading);
    if (std::abs(err) > 1e-6) {
      out.avoid = robot.avoid;
      out.command = {0.0, clampd(err / params.dt, robot.max_turn_rate)};
      return out;
    }
  }
  if (robot.avoid.heading || robot.avoid.detour_ticks > 0) {
    // Drive the detour out before re-aiming at the target.
    out.avoid.detour_ticks = std::max(0, robot.avoid.detour_ticks - 1);
    out.command = {robot.max_speed, 0.0};
    return out;
  }
  const double err = wrap_angle(std::atan2(to_target.y, to_target.x) - robot.pose.heading);
  out.command.turn_rate = clampd(params.goto_gain * err, robot.max_turn_rate);
  out.command.forward_speed = std::abs(err) < params.goto_rotate_threshold ? robot.max_speed : 0.0;
  return out;
}

std::map<int, double> formation_slots(std::span<const std::pair<int, double>> bearings) {
  std::vector<std::pair<double, int>> order;
  order.reserve(bearings.size());
  for (const auto& [id, bearing] : bearings) {
    double b = std::fmod(bearing, 2.0 * kPi);
    if (b < 0.0) b += 2.0 * kPi;
    order.emplace_back(b, id);
  }
  std::sort(order.begin(), order.end());
  std::map<int, double> slots;
  const double step = order.empty() ? 0.0 : 2.0 * kPi / static_cast<double>(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    slots[order[k].second] = step * static_cast<double>(k);
  }
  return slots;
}

VelocityCommand formation_step(const RobotState& robot, Vec2 center, double slot,
                               const FormationParams& params, double t) {
  const double phase = slot + params.angular_speed * t;
  const Vec2 reference = center + unit_from_angle(phase) * params.ring_radius;
  const Vec2 feed_forward =
      Vec2{-std::sin(phase), std::cos(phase)} * (params.ring_radius * params.angular_speed);
  const Vec2 desired = feed_forward + (reference - robot.pose.position) * params.gain_radial;

  const double speed = desired.norm();
  if (speed < 1e-12) return {};
  const double err = wrap_angle(std::atan2(desired.y, desired.x) - robot.pose.heading);
  VelocityCommand cmd;
  cmd.forward_speed = speed * std::max(0.0, std::cos(err));
  cmd.turn_rate = params.angular_speed + params.gain_heading * err;
  return clamp_command(robot, cmd);
}

}  // namespace giant
