#include "giant/operator_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace giant {

namespace {

constexpr double kOpeningClearance = 0.15;
// Straight-line paths must stay this many robot radii from walls.
constexpr double kPathClearance = 1.5;

Vec2 inward_normal(const TaskRegion& region) {
  const Segment& o = *region.opening;
  const Vec2 d = o.b - o.a;
  Vec2 n{-d.y, d.x};
  n = n / n.norm();
  if (dot(region.rect.center() - o.center(), n) < 0.0) n = n * -1.0;
  return n;
}

// Parameter interval of the ray origin + t*dir inside rect.
std::optional<std::pair<double, double>> ray_in_rect(Vec2 origin, Vec2 dir, const Rect& r) {
  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  const double o[2] = {origin.x, origin.y};
  const double d[2] = {dir.x, dir.y};
  const double lo[2] = {r.min.x, r.min.y};
  const double hi[2] = {r.max.x, r.max.y};
  for (int k = 0; k < 2; ++k) {
    if (std::abs(d[k]) < 1e-12) {
      if (o[k] < lo[k] || o[k] > hi[k]) return std::nullopt;
      continue;
    }
    double a = (lo[k] - o[k]) / d[k];
    double b = (hi[k] - o[k]) / d[k];
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
  }
  if (t0 > t1) return std::nullopt;
  return std::make_pair(t0, t1);
}

std::vector<InteractionEvent> pick_and_place(int robot, Vec2 target) {
  return {event::GraspStart{ObjectRef::target_of(robot)},
          event::GraspEnd{ObjectRef::target_of(robot), {target.x, target.y, 0.0}}};
}

std::vector<int> region_counts(const Snapshot& s, const MissionSpec& spec) {
  std::vector<int> counts(spec.regions.size(), 0);
  for (const auto& r : s.robots) {
    for (std::size_t i = 0; i < spec.regions.size(); ++i) {
      if (spec.regions[i].rect.contains(r.pose.position)) ++counts[i];
    }
  }
  return counts;
}

int region_of(const MissionSpec& spec, Vec2 p) {
  for (std::size_t i = 0; i < spec.regions.size(); ++i) {
    if (spec.regions[i].rect.contains(p)) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

std::string_view strategy_name(Strategy s) { return s == Strategy::Strategy1 ? "strategy1" : "strategy2"; }

Strategy parse_strategy(std::string_view s) {
  if (s == "strategy1" || s == "1" || s == "s1") return Strategy::Strategy1;
  if (s == "strategy2" || s == "2" || s == "s2") return Strategy::Strategy2;
  throw std::invalid_argument("unknown strategy: " + std::string(s));
}

ScriptedOperator::ScriptedOperator(OperatorPolicy policy, MissionSpec spec, std::uint64_t seed)
    : policy_(policy), spec_(std::move(spec)), rng_(seed, kOperatorStream) {}

bool ScriptedOperator::is_sealed(int region_index) const {
  return std::find(sealed_.begin(), sealed_.end(), region_index) != sealed_.end();
}

std::vector<InteractionEvent> ScriptedOperator::decide(const Snapshot& snapshot, const MissionState& mission) {
  if (mission.complete()) return {};
  const std::vector<int> counts = region_counts(snapshot, spec_);
  bool all_met = true;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] != spec_.regions[i].demand) all_met = false;
  }
  if (all_met) return {};

  if (policy_.strategy == Strategy::Strategy2) {
    if (auto ev = maintain_seals(snapshot, counts)) return *ev;
  }
  if (auto ev = allocate(snapshot, counts)) return *ev;
  return {};
}

std::optional<std::vector<InteractionEvent>> ScriptedOperator::maintain_seals(const Snapshot& s,
                                                                              const std::vector<int>& counts) {
  // A sealed region that drifted off its demand is reopened (walls pop LIFO).
  for (int idx : sealed_) {
    if (counts[idx] != spec_.regions[idx].demand) {
      sealed_.pop_back();
      return std::vector<InteractionEvent>{event::MenuShown{}, event::Touch{kUndoWallButton},
                                           event::MenuHidden{}};
    }
  }
  for (std::size_t i = 0; i < spec_.regions.size(); ++i) {
    const TaskRegion& region = spec_.regions[i];
    const int idx = static_cast<int>(i);
    if (!region.opening || is_sealed(idx) || counts[i] != region.demand) continue;
    const Segment& o = *region.opening;
    bool doorway_clear = true;
    for (const auto& r : s.robots) {
      if (point_segment_distance(r.pose.position, o.a, o.b) < kOpeningClearance) doorway_clear = false;
    }
    if (!doorway_clear) continue;
    sealed_.push_back(idx);
    return std::vector<InteractionEvent>{
        event::MenuShown{},
        event::Touch{kDrawWallButton},
        event::MenuHidden{},
        event::PinchStart{Hand::Right, {o.a.x, o.a.y, 0.0}},
        event::PinchEnd{Hand::Right, {o.b.x, o.b.y, 0.0}},
        event::MenuShown{},
        event::Touch{kDrawWallButton},
        event::MenuHidden{},
    };
  }
  return std::nullopt;
}

namespace {

// True when a robot driving straight from `from` to `to` keeps `clearance`
// from every fixture and wall.
bool path_clear(const Snapshot& s, Vec2 from, Vec2 to, double clearance) {
  for (const auto& f : s.fixtures) {
    if (segment_segment_distance(from, to, f.a, f.b) < clearance) return false;
  }
  for (const auto& w : s.walls) {
    if (segment_segment_distance(from, to, w.a, w.b) < clearance) return false;
  }
  return true;
}

}  // namespace

std::optional<Vec2> ScriptedOperator::entry_target(const Snapshot& s, const RobotView& robot,
                                                   const TaskRegion& region) {
  const OperatorTunables& t = policy_.tunables;
  const Rect inner{region.rect.min + Vec2{t.target_margin, t.target_margin},
                   region.rect.max - Vec2{t.target_margin, t.target_margin}};
  const Vec2 from = robot.pose.position;
  if (!region.opening) return inner.center();
  const Vec2 door = region.opening->center();
  Vec2 u = door - from;
  const double len = u.norm();
  if (len < 1e-9) return std::nullopt;
  u = u / len;
  if (dot(u, inward_normal(region)) < t.approach_alignment) return std::nullopt;
  const auto span = ray_in_rect(door, u, inner);
  if (!span || span->second <= std::max(span->first, 0.0)) return std::nullopt;
  const double lo = std::max(span->first, 0.0);
  const double depth = rng_.uniform(t.target_depth_min, t.target_depth_max);
  const Vec2 target = door + u * std::clamp(depth, lo, span->second);
  if (!path_clear(s, from, target, kPathClearance * robot.radius)) return std::nullopt;
  return target;
}

Vec2 ScriptedOperator::staging_target(const TaskRegion& region, const ArenaSpec& arena, double radius) const {
  const Vec2 door = region.opening ? region.opening->center() : region.rect.center();
  const Vec2 n = region.opening ? inward_normal(region) : Vec2{0.0, 1.0};
  return arena.clamp(door - n * policy_.tunables.approach_depth, 2.0 * radius);
}

std::optional<Vec2> ScriptedOperator::exit_target(const Snapshot& s, const RobotView& robot,
                                                  const TaskRegion& region) const {
  if (!region.opening) return std::nullopt;
  const Vec2 target = s.arena.clamp(region.opening->center() - inward_normal(region) * policy_.tunables.exit_depth,
                                    2.0 * robot.radius);
  if (!path_clear(s, robot.pose.position, target, kPathClearance * robot.radius)) return std::nullopt;
  return target;
}

std::optional<std::vector<InteractionEvent>> ScriptedOperator::allocate(const Snapshot& s,
                                                                        const std::vector<int>& counts) {
  const std::size_t nreg = spec_.regions.size();
  // Free robots (outside every region) and where their targets point.
  struct Free {
    const RobotView* robot;
    int assigned;  // region index of its target, -1 if none
  };
  std::vector<Free> free;
  std::vector<int> assigned(nreg, 0);
  for (const auto& r : s.robots) {
    if (region_of(spec_, r.pose.position) >= 0) continue;
    int a = -1;
    if (r.mode == Mode::GoToTarget && r.target) a = region_of(spec_, *r.target);
    if (a >= 0) ++assigned[a];
    free.push_back({&r, a});
  }
  std::vector<int> need(nreg);
  for (std::size_t i = 0; i < nreg; ++i) need[i] = spec_.regions[i].demand - counts[i] - assigned[i];

  auto neediest = [&]() {
    int best = -1;
    for (std::size_t i = 0; i < nreg; ++i) {
      if (need[i] > 0 && !is_sealed(static_cast<int>(i)) && (best < 0 || need[i] > need[best])) {
        best = static_cast<int>(i);
      }
    }
    return best;
  };
  auto door_of = [&](int idx) {
    const TaskRegion& r = spec_.regions[idx];
    return r.opening ? r.opening->center() : r.rect.center();
  };
  // Sends the robot into the region, or to the doorway first when it has no
  // straight shot through it.
  auto route = [&](const RobotView& robot, int region) {
    const TaskRegion& spec = spec_.regions[region];
    if (auto t = entry_target(s, robot, spec)) return pick_and_place(robot.id, *t);
    return pick_and_place(robot.id, staging_target(spec, s.arena, robot.radius));
  };

  // En-route robots whose straight path runs into a wall get re-aimed.
  for (const auto& f : free) {
    if (f.assigned < 0 || is_sealed(f.assigned)) continue;
    if (!path_clear(s, f.robot->pose.position, *f.robot->target, kPathClearance * f.robot->radius)) {
      return route(*f.robot, f.assigned);
    }
  }

  const int target_region = neediest();

  // Robots heading into a region that no longer needs them are redirected.
  for (std::size_t i = 0; i < nreg && target_region >= 0; ++i) {
    const bool surplus = need[i] < 0 || is_sealed(static_cast<int>(i));
    if (!surplus || assigned[i] == 0) continue;
    const RobotView* pick = nullptr;
    double best = -1.0;
    for (const auto& f : free) {
      if (f.assigned != static_cast<int>(i)) continue;
      const double d = distance(f.robot->pose.position, door_of(static_cast<int>(i)));
      if (d > best) {
        best = d;
        pick = f.robot;
      }
    }
    if (pick != nullptr) return route(*pick, target_region);
  }

  if (target_region >= 0) {
    // Nearest robot with a straight shot through the doorway; otherwise the
    // nearest idle one is brought in front of the door.
    const TaskRegion& region = spec_.regions[target_region];
    const Vec2 door = door_of(target_region);
    std::vector<const Free*> order;
    for (const auto& f : free) {
      if (f.assigned < 0) order.push_back(&f);
    }
    std::sort(order.begin(), order.end(), [&](const Free* a, const Free* b) {
      const double da = distance(a->robot->pose.position, door);
      const double db = distance(b->robot->pose.position, door);
      return da != db ? da < db : a->robot->id < b->robot->id;
    });
    for (const Free* f : order) {
      if (auto t = entry_target(s, *f->robot, region)) return pick_and_place(f->robot->id, *t);
    }
    for (const Free* f : order) {
      if (f->robot->mode == Mode::GoToTarget) continue;  // already on its way somewhere
      return pick_and_place(f->robot->id, staging_target(region, s.arena, f->robot->radius));
    }
  }

  // Nothing free to send: evict one robot from an over-full region.
  for (std::size_t i = 0; i < nreg; ++i) {
    if (counts[i] <= spec_.regions[i].demand || is_sealed(static_cast<int>(i))) continue;
    bool leaving = false;
    for (const auto& r : s.robots) {
      if (spec_.regions[i].rect.contains(r.pose.position) && r.mode == Mode::GoToTarget && r.target &&
          region_of(spec_, *r.target) != static_cast<int>(i)) {
        leaving = true;
      }
    }
    if (leaving) continue;
    const Vec2 door = door_of(static_cast<int>(i));
    std::vector<const RobotView*> inside;
    for (const auto& r : s.robots) {
      if (spec_.regions[i].rect.contains(r.pose.position)) inside.push_back(&r);
    }
    std::sort(inside.begin(), inside.end(), [&](const RobotView* a, const RobotView* b) {
      const double da = distance(a->pose.position, door);
      const double db = distance(b->pose.position, door);
      return da != db ? da < db : a->id < b->id;
    });
    for (const RobotView* r : inside) {
      if (auto t = exit_target(s, *r, spec_.regions[i])) return pick_and_place(r->id, *t);
    }
  }
  return std::nullopt;
}

RunResult run_headless(const Scenario& scenario, std::uint64_t seed, const RunOptions& options) {
  World world = build_world(scenario, seed);
  const double dt = world.dt();
  SessionState session;
  session.rule = scenario.counting;

  std::optional<MissionState> mission;
  if (scenario.mission) mission = start_mission(*scenario.mission, dt, world.tick());

  std::optional<ScriptedOperator> op;
  if (options.policy) {
    if (!scenario.mission) throw ConfigError("operator policy requires a mission in the scenario");
    op.emplace(*options.policy, *scenario.mission, seed);
  }

  double duration = 0.0;
  if (options.duration) duration = *options.duration;
  else if (scenario.mission) duration = scenario.mission->timeout;
  else throw ConfigError("run duration required for scenarios without a mission");

  const std::int64_t start = world.tick();
  const auto max_ticks = static_cast<std::int64_t>(std::llround(duration / dt));
  const double period = options.policy ? options.policy->tunables.decision_period : 1.0;
  const auto period_ticks = std::max<std::int64_t>(1, std::llround(period / dt));

  Snapshot snap = world.snapshot();
  if (options.on_snapshot) options.on_snapshot(snap);
  std::vector<Command> cmds;
  while (world.tick() - start < max_ticks) {
    cmds.clear();
    if (op && mission && (world.tick() - start) % period_ticks == 0) {
      for (const auto& ev : op->decide(snap, *mission)) {
        auto outcome = apply_event(session, ev, snap);
        cmds.insert(cmds.end(), outcome.commands.begin(), outcome.commands.end());
      }
    }
    const std::int64_t tick = world.tick();
    const auto results = world.step(cmds);
    for (std::size_t i = 0; i < cmds.size(); ++i) record_command(session, tick, cmds[i], results[i]);
    snap = world.snapshot();
    if (options.on_snapshot) options.on_snapshot(snap);
    if (mission) {
      *mission = update(std::move(*mission), snap);
      if (options.stop_on_completion && mission->complete()) break;
    }
  }

  RunResult out;
  out.seed = seed;
  out.config_hash = config_hash(scenario, seed);
  out.metrics = mission ? metrics(*mission, session) : metrics(start_mission({}, dt, start), session);
  out.log = std::move(session.command_log);
  out.final_snapshot = std::move(snap);
  out.end_tick = world.tick();
  out.mission = std::move(mission);
  return out;
}

OperatorPolicy make_policy(const Scenario& scenario, Strategy strategy) {
  return {strategy, scenario.operator_tunables};
}

RunResult run_experiment(std::uint64_t seed, const OperatorPolicy& policy, const Scenario& scenario) {
  RunOptions options;
  options.policy = policy;
  return run_headless(scenario, seed, options);
}

}  // namespace giant
