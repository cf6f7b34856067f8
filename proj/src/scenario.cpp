#include "giant/scenario.hpp"

#include <fstream>

#include "giant/codec.hpp"
#include "giant/hash.hpp"

namespace giant {

namespace {

constexpr std::uint64_t kScenarioStream = kOperatorStream + 1;

template <typename T>
T opt(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : it->get<T>();
}

}  // namespace

Scenario parse_scenario(const json& j) {
  Scenario s;
  try {
    s.source = j;
    s.name = opt<std::string>(j, "name", "scenario");
    WorldConfig& w = s.world;
    w.seed = opt<std::uint64_t>(j, "seed", 0);
    w.dt = opt<double>(j, "dt", 0.05);
    if (j.contains("arena")) w.arena = j["arena"].get<ArenaSpec>();

    const json jr = opt<json>(j, "robot", json::object());
    w.robot.radius = opt(jr, "radius", w.robot.radius);
    w.robot.max_speed = opt(jr, "max_speed", w.robot.max_speed);
    w.robot.max_turn_rate = opt(jr, "max_turn_rate", w.robot.max_turn_rate);
    w.robot.avoid_radius = opt(jr, "avoid_radius", w.robot.avoid_radius);

    const json jb = opt<json>(j, "behavior", json::object());
    BehaviorParams& b = w.behavior;
    b.lookahead_factor = opt(jb, "lookahead_factor", b.lookahead_factor);
    b.lookahead_half_angle = opt(jb, "lookahead_half_angle", b.lookahead_half_angle);
    b.goto_gain = opt(jb, "goto_gain", b.goto_gain);
    b.goto_rotate_threshold = opt(jb, "goto_rotate_threshold", b.goto_rotate_threshold);
    b.arrival_factor = opt(jb, "arrival_factor", b.arrival_factor);
    b.detour_time = opt(jb, "detour_time", b.detour_time);
    const auto post = opt<std::string>(jb, "post_arrival", "resume");
    if (post == "resume") b.post_arrival = PostArrival::Resume;
    else if (post == "hold") b.post_arrival = PostArrival::Hold;
    else throw ConfigError("behavior.post_arrival must be 'resume' or 'hold'");

    const json jf = opt<json>(j, "formation", json::object());
    FormationParams& f = b.formation;
    f.ring_radius = opt(jf, "ring_radius", f.ring_radius);
    f.angular_speed = opt(jf, "angular_speed", f.angular_speed);
    f.gain_heading = opt(jf, "gain_heading", f.gain_heading);
    f.gain_radial = opt(jf, "gain_radial", f.gain_radial);
    b.formation_join_factor = opt(jf, "join_factor", b.formation_join_factor);
    if (!(f.ring_radius > 0.0)) throw ConfigError("formation.ring_radius must be positive");
    if (f.angular_speed == 0.0) throw ConfigError("formation.angular_speed must be non-zero");

    for (const auto& fx : opt<json>(j, "fixtures", json::array())) {
      w.fixtures.push_back({fx.at("a").get<Vec2>(), fx.at("b").get<Vec2>()});
    }

    for (const auto& rb : opt<json>(j, "robots", json::array())) {
      s.spawns.push_back({{rb.at("x").get<double>(), rb.at("y").get<double>()}, opt(rb, "heading", 0.0)});
    }
    if (j.contains("grid")) {
      const json& g = j["grid"];
      const Vec2 origin = g.at("origin").get<Vec2>();
      const int cols = g.at("cols").get<int>();
      const int rows = g.at("rows").get<int>();
      const double spacing = g.at("spacing").get<double>();
      const int count = opt(g, "count", cols * rows);
      if (cols <= 0 || rows <= 0 || count > cols * rows) throw ConfigError("grid too small for count");
      const bool random_heading = g.contains("heading") && g["heading"].is_string() &&
                                  g["heading"].get<std::string>() == "random";
      const double fixed_heading = (g.contains("heading") && g["heading"].is_number())
                                       ? g["heading"].get<double>()
                                       : 0.0;
      RngStream rng(w.seed, kScenarioStream);
      for (int k = 0; k < count; ++k) {
        const Vec2 p = origin + Vec2{spacing * (k % cols), spacing * (k / cols)};
        s.spawns.push_back({p, random_heading ? rng.uniform(-kPi, kPi) : fixed_heading});
      }
    }
    if (j.contains("cube")) s.initial_cube = j["cube"].at("pos").get<Vec2>();

    if (j.contains("mission")) {
      const json& jm = j["mission"];
      MissionSpec m;
      m.dwell_time = opt(jm, "dwell_time", m.dwell_time);
      m.timeout = opt(jm, "timeout", m.timeout);
      for (const auto& jreg : jm.at("regions")) {
        TaskRegion r;
        r.id = jreg.at("id").get<int>();
        r.name = opt<std::string>(jreg, "name", "Task " + std::to_string(r.id));
        r.rect = {jreg.at("min").get<Vec2>(), jreg.at("max").get<Vec2>()};
        r.demand = jreg.at("demand").get<int>();
        if (r.demand <= 0) throw ConfigError("region demand must be positive");
        if (!w.arena.contains(r.rect.min) || !w.arena.contains(r.rect.max)) {
          throw ConfigError("region rectangle outside arena");
        }
        if (jreg.contains("opening")) {
          r.opening = Segment{jreg["opening"].at("a").get<Vec2>(), jreg["opening"].at("b").get<Vec2>()};
        }
        w.regions.push_back({r.id, r.name, r.rect});
        m.regions.push_back(std::move(r));
      }
      s.mission = std::move(m);
    }

    const json jo = opt<json>(j, "operator", json::object());
    OperatorTunables& o = s.operator_tunables;
    o.decision_period = opt(jo, "decision_period", o.decision_period);
    o.target_depth_min = opt(jo, "target_depth_min", o.target_depth_min);
    o.target_depth_max = opt(jo, "target_depth_max", o.target_depth_max);
    o.target_margin = opt(jo, "target_margin", o.target_margin);
    o.exit_depth = opt(jo, "exit_depth", o.exit_depth);
    o.approach_depth = opt(jo, "approach_depth", o.approach_depth);
    o.approach_alignment = opt(jo, "approach_alignment", o.approach_alignment);
    s.counting.count_toggles = opt(jo, "count_toggles", false);

    const json js = opt<json>(j, "server", json::object());
    s.server.snapshot_rate = opt(js, "snapshot_rate", s.server.snapshot_rate);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid scenario: ") + e.what());
  } catch (const CodecError& e) {
    throw ConfigError(std::string("invalid scenario: ") + e.what());
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse scenario file " + path.string() + ": " + e.what());
  }
  return parse_scenario(j);
}

json effective_config(const Scenario& s, std::uint64_t seed) {
  json j = s.source;
  j["seed"] = seed;
  return j;
}

std::string config_hash(const Scenario& s, std::uint64_t seed) {
  return hex64(fnv1a64(effective_config(s, seed).dump()));
}

World build_world(const Scenario& s, std::uint64_t seed) {
  if (seed == s.world.seed) {
    WorldConfig cfg = s.world;
    World w(std::move(cfg));
    for (const auto& p : s.spawns) w.spawn_robot(p);
    if (s.initial_cube) w.apply_command(PlaceCube{*s.initial_cube});
    return w;
  }
  // Random spawn headings depend on the seed, so re-derive them.
  return build_world(parse_scenario(effective_config(s, seed)), seed);
}

json reference_mission_config(std::uint64_t seed) {
  // Rooms occupy the strip y in [2.6, 4.0]; each has a 0.5 m doorway in its
  // bottom wall.
  const double y0 = 2.6;
  const double door = 0.5;
  struct Room {
    int id;
    double x0, x1;
    int demand;
  };
  const Room rooms[] = {{1, 0.0, 2.6, 25}, {2, 2.6, 4.4, 15}, {3, 4.4, 6.0, 10}};
  json fixtures = json::array();
  json regions = json::array();
  for (const auto& r : rooms) {
    const double mid = 0.5 * (r.x0 + r.x1);
    fixtures.push_back({{"a", {r.x0, y0}}, {"b", {mid - door / 2, y0}}});
    fixtures.push_back({{"a", {mid + door / 2, y0}}, {"b", {r.x1, y0}}});
    regions.push_back({{"id", r.id},
                       {"name", "Task " + std::to_string(r.id)},
                       {"min", {r.x0, y0}},
                       {"max", {r.x1, 4.0}},
                       {"demand", r.demand},
                       {"opening", {{"a", {mid - door / 2, y0}}, {"b", {mid + door / 2, y0}}}}});
  }
  for (double x : {2.6, 4.4}) fixtures.push_back({{"a", {x, y0}}, {"b", {x, 4.0}}});
  return json{
      {"name", "task-allocation"},
      {"seed", seed},
      {"dt", 0.05},
      {"arena", {{"width", 6.0}, {"height", 4.0}, {"origin", {0.0, 0.0}}}},
      {"robot", {{"radius", 0.037}, {"max_speed", 0.05}, {"max_turn_rate", kPi}, {"avoid_radius", 0.055}}},
      {"grid", {{"origin", {2.325, 0.6}}, {"cols", 10}, {"rows", 5}, {"spacing", 0.15}, {"count", 50},
                {"heading", "random"}}},
      {"fixtures", fixtures},
      {"mission", {{"dwell_time", 5.0}, {"timeout", 1200.0}, {"regions", regions}}},
      {"operator", {{"decision_period", 2.0}}},
  };
}

}  // namespace giant
