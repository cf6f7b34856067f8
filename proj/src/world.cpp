#include "giant/world.hpp"

#include <algorithm>
#include <cmath>

namespace giant {

std::string_view command_name(const Command& c) {
  struct Visitor {
    std::string_view operator()(const PlaceTarget&) const { return "PlaceTarget"; }
    std::string_view operator()(const PickTarget&) const { return "PickTarget"; }
    std::string_view operator()(const DrawWall&) const { return "DrawWall"; }
    std::string_view operator()(const UndoWall&) const { return "UndoWall"; }
    std::string_view operator()(const PlaceCube&) const { return "PlaceCube"; }
    std::string_view operator()(const PickCube&) const { return "PickCube"; }
    std::string_view operator()(const ToggleWallMode&) const { return "ToggleWallMode"; }
  };
  return std::visit(Visitor{}, c);
}

Vec2 ArenaSpec::clamp(Vec2 p, double margin) const {
  const Rect r = rect();
  const double mx = std::min(margin, width / 2.0);
  const double my = std::min(margin, height / 2.0);
  return {std::clamp(p.x, r.min.x + mx, r.max.x - mx), std::clamp(p.y, r.min.y + my, r.max.y - my)};
}

const RobotView* Snapshot::robot(int id) const {
  for (const auto& r : robots) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::vector<RegionCount> count_regions(std::span<const RegionSpec> regions,
                                       std::span<const RobotView> robots) {
  std::vector<RegionCount> counts;
  counts.reserve(regions.size());
  for (const auto& region : regions) {
    RegionCount rc{region.id, region.rect, 0};
    for (const auto& r : robots) {
      if (region.rect.contains(r.pose.position)) ++rc.count;
    }
    counts.push_back(rc);
  }
  return counts;
}

namespace {

constexpr double kMinWallLength = 1e-3;

double boundary_violation(const ArenaSpec& arena, Vec2 p, double radius) {
  const Rect r = arena.rect();
  return std::max({0.0, r.min.x + radius - p.x, p.x + radius - r.max.x, r.min.y + radius - p.y,
                   p.y + radius - r.max.y});
}

}  // namespace

World::World(WorldConfig config) : config_(std::move(config)) {
  if (!(config_.arena.width > 0.0) || !(config_.arena.height > 0.0)) {
    throw WorldError("arena width and height must be positive");
  }
  if (!(config_.dt > 0.0)) throw WorldError("dt must be positive");
  config_.behavior.dt = config_.dt;
  for (const auto& f : config_.fixtures) {
    if (!config_.arena.contains(f.a) || !config_.arena.contains(f.b)) {
      throw WorldError("fixture endpoint outside arena");
    }
    if (distance(f.a, f.b) < kMinWallLength) throw WorldError("degenerate fixture");
  }
}

const RobotState* World::find_robot(int id) const {
  for (const auto& r : robots_) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

RobotState* World::find_robot_mut(int id) {
  return const_cast<RobotState*>(std::as_const(*this).find_robot(id));
}

bool World::is_free(Vec2 p, double radius, double avoid_radius, int ignore_id) const {
  if (!p.finite() || !config_.arena.contains_disc(p, radius)) return false;
  auto segment_clear = [&](Vec2 a, Vec2 b) {
    if (point_segment_distance(p, a, b) < radius) return false;
    for (const Vec2& q : expand_wall_points(a, b, avoid_radius)) {
      if (distance(p, q) < avoid_radius) return false;
    }
    return true;
  };
  for (const auto& f : config_.fixtures) {
    if (!segment_clear(f.a, f.b)) return false;
  }
  for (const auto& w : walls_) {
    if (!segment_clear(w.a, w.b)) return false;
  }
  for (const auto& r : robots_) {
    if (r.id == ignore_id) continue;
    if (distance(p, r.pose.position) < radius + r.radius) return false;
  }
  return true;
}

int World::spawn_robot(Pose pose, std::optional<double> radius) {
  RobotState r;
  r.radius = radius.value_or(config_.robot.radius);
  r.max_speed = config_.robot.max_speed;
  r.max_turn_rate = config_.robot.max_turn_rate;
  r.avoid_radius = std::max(config_.robot.avoid_radius, r.radius);
  if (!(r.radius > 0.0)) throw WorldError("robot radius must be positive");
  if (!(r.max_speed > 0.0)) throw WorldError("max_speed must be positive");
  if (!is_free(pose.position, r.radius, r.avoid_radius)) {
    throw WorldError("spawn position overlaps an obstacle or leaves the arena");
  }
  int id = 0;
  for (const auto& other : robots_) id = std::max(id, other.id + 1);
  r.id = id;
  r.pose = {pose.position, wrap_angle(pose.heading)};
  rebuild_blocking_points(r);
  robots_.push_back(std::move(r));
  rngs_.emplace_back(config_.seed, static_cast<std::uint64_t>(id));
  return id;
}

int World::add_wall(Vec2 a, Vec2 b) {
  if (!a.finite() || !b.finite()) throw WorldError("wall endpoint not finite");
  if (distance(a, b) < kMinWallLength) throw WorldError("degenerate wall segment");
  if (!config_.arena.contains(a) || !config_.arena.contains(b)) {
    throw WorldError("wall endpoint outside arena");
  }
  WallSegment w{next_wall_id_++, a, b, next_ordinal_++};
  walls_.push_back(w);
  rebuild_blocking_points();
  return w.id;
}

void World::undo_wall() {
  if (walls_.empty()) return;
  auto newest = std::max_element(walls_.begin(), walls_.end(),
                                 [](const auto& l, const auto& r) { return l.ordinal < r.ordinal; });
  walls_.erase(newest);
  rebuild_blocking_points();
}

void World::rebuild_blocking_points(RobotState& r) const {
  r.blocking_points.clear();
  auto append = [&](Vec2 a, Vec2 b) {
    auto pts = expand_wall_points(a, b, r.avoid_radius);
    r.blocking_points.insert(r.blocking_points.end(), pts.begin(), pts.end());
  };
  for (const auto& f : config_.fixtures) append(f.a, f.b);
  for (const auto& w : walls_) append(w.a, w.b);
}

void World::rebuild_blocking_points() {
  for (auto& r : robots_) rebuild_blocking_points(r);
}

void World::place_cube(Vec2 pos) {
  cube_.position = pos;
  cube_.status = CubeStatus::Placed;
  cube_.placed_time = time();
  const auto& fp = config_.behavior.formation;
  const double join = config_.behavior.formation_join_factor * fp.ring_radius;
  std::vector<std::pair<int, double>> bearings;
  for (const auto& r : robots_) {
    const Vec2 rel = r.pose.position - pos;
    if (r.mode == Mode::Formation || rel.norm() <= join) {
      bearings.emplace_back(r.id, std::atan2(rel.y, rel.x));
    }
  }
  const auto slots = formation_slots(bearings);
  for (auto& r : robots_) {
    auto it = slots.find(r.id);
    if (it == slots.end()) continue;
    r.mode = Mode::Formation;
    r.formation_slot = it->second;
    r.holding = false;
    r.avoid = {};
  }
}

CommandResult World::apply(const Command& c) {
  const ArenaSpec& arena = config_.arena;
  if (const auto* pt = std::get_if<PlaceTarget>(&c)) {
    RobotState* r = find_robot_mut(pt->robot);
    if (r == nullptr) return {false, "unknown robot id"};
    if (!pt->pos.finite()) return {false, "target not finite"};
    // Off-arena targets snap to the nearest reachable interior point.
    const Vec2 reachable = arena.clamp(pt->pos, r->radius);
    r->mode = Mode::GoToTarget;
    r->target = reachable;
    r->target_clamped = !(reachable == pt->pos);
    r->holding = false;
    r->avoid = {};
    return {};
  }
  if (const auto* pk = std::get_if<PickTarget>(&c)) {
    if (find_robot(pk->robot) == nullptr) return {false, "unknown robot id"};
    return {};
  }
  if (const auto* dw = std::get_if<DrawWall>(&c)) {
    try {
      add_wall(dw->a, dw->b);
    } catch (const WorldError& e) {
      return {false, e.what()};
    }
    return {};
  }
  if (std::holds_alternative<UndoWall>(c)) {
    undo_wall();
    return {};
  }
  if (const auto* pc = std::get_if<PlaceCube>(&c)) {
    if (!pc->pos.finite() || !arena.contains(pc->pos)) return {false, "cube outside arena"};
    place_cube(pc->pos);
    return {};
  }
  if (std::holds_alternative<PickCube>(c)) {
    cube_.status = CubeStatus::Inactive;
    return {};
  }
  return {};  // ToggleWallMode is session-level
}

bool World::admissible(const RobotState& r, Vec2 from, Vec2 to) const {
  if (!to.finite()) return false;
  const double v_to = boundary_violation(config_.arena, to, r.radius);
  if (v_to > 0.0 && v_to > boundary_violation(config_.arena, from, r.radius)) return false;
  for (const Vec2& p : r.blocking_points) {
    const double d_to = distance(to, p);
    if (d_to < r.avoid_radius && d_to < distance(from, p)) return false;
  }
  for (const auto& o : robots_) {
    if (o.id == r.id) continue;
    const double min_sep = r.radius + o.radius;
    const double d_to = distance(to, o.pose.position);
    if (d_to < min_sep && d_to < distance(from, o.pose.position)) return false;
  }
  return true;
}

std::vector<CommandResult> World::step(std::span<const Command> commands) {
  std::vector<CommandResult> results;
  results.reserve(commands.size());
  for (const auto& c : commands) results.push_back(apply(c));

  const BehaviorParams& params = config_.behavior;
  const double dt = config_.dt;
  const double now = time();
  const std::size_t n = robots_.size();

  std::vector<VelocityCommand> cmds(n);
  ObstacleSet obstacles;
  obstacles.boundary = &config_.arena;
  for (std::size_t i = 0; i < n; ++i) {
    RobotState& r = robots_[i];
    obstacles.points = r.blocking_points;
    obstacles.discs.clear();
    const double sense = params.lookahead_factor * r.avoid_radius + r.radius;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const RobotState& o = robots_[j];
      if (distance(r.pose.position, o.pose.position) <= sense + o.radius) {
        obstacles.discs.push_back({o.pose.position, o.radius});
      }
    }

    ControlOutput out;
    switch (r.mode) {
      case Mode::Autonomous:
        out = random_walk_step(r, obstacles, rngs_[i], params);
        break;
      case Mode::GoToTarget:
        if (!r.holding) out = goto_target_step(r, r.target, obstacles, rngs_[i], params);
        break;
      case Mode::Formation:
        if (cube_.status == CubeStatus::Placed) {
          out.command = formation_step(r, cube_.position, r.formation_slot, params.formation,
                                       now - cube_.placed_time);
        }
        break;
    }
    r.avoid = out.avoid;
    cmds[i] = clamp_command(r, out.command);
  }

  for (std::size_t i = 0; i < n; ++i) {
    RobotState& r = robots_[i];
    const VelocityCommand& vc = cmds[i];
    const double mid_heading = r.pose.heading + 0.5 * vc.turn_rate * dt;
    r.pose.heading = wrap_angle(r.pose.heading + vc.turn_rate * dt);
    r.blocked = false;
    if (vc.forward_speed > 0.0) {
      const Vec2 from = r.pose.position;
      const Vec2 to = from + unit_from_angle(mid_heading) * (vc.forward_speed * dt);
      if (admissible(r, from, to)) {
        r.pose.position = to;
      } else {
        r.blocked = true;
      }
    }
    if (r.mode == Mode::GoToTarget && !r.holding &&
        distance(r.pose.position, r.target) <= params.arrival_factor * r.radius) {
      if (params.post_arrival == PostArrival::Resume) {
        r.mode = Mode::Autonomous;
      } else {
        r.holding = true;
      }
      r.avoid = {};
    }
  }
  ++tick_;
  return results;
}

Snapshot World::snapshot() const {
  Snapshot s;
  s.tick = tick_;
  s.dt = config_.dt;
  s.arena = config_.arena;
  s.robots.reserve(robots_.size());
  for (const auto& r : robots_) {
    RobotView v{r.id, r.pose, r.radius, r.mode, std::nullopt};
    if (r.mode == Mode::GoToTarget) v.target = r.target;
    s.robots.push_back(v);
  }
  s.walls = walls_;
  s.fixtures = config_.fixtures;
  s.cube = cube_;
  s.regions = count_regions(config_.regions, s.robots);
  return s;
}

}  // namespace giant
