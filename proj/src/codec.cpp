#include "giant/codec.hpp"

#include <cstdio>

#include "giant/hash.hpp"

namespace giant {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

namespace {

template <typename T>
T need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw CodecError(std::string("missing field '") + key + "'");
  return it->get<T>();
}

Hand parse_hand(const std::string& s) {
  if (s == "left") return Hand::Left;
  if (s == "right") return Hand::Right;
  throw CodecError("bad hand: " + s);
}

const char* hand_name(Hand h) { return h == Hand::Left ? "left" : "right"; }

Mode parse_mode(const std::string& s) {
  if (s == "autonomous") return Mode::Autonomous;
  if (s == "goto") return Mode::GoToTarget;
  if (s == "formation") return Mode::Formation;
  throw CodecError("bad mode: " + s);
}

}  // namespace

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::Autonomous: return "autonomous";
    case Mode::GoToTarget: return "goto";
    case Mode::Formation: return "formation";
  }
  return "autonomous";
}

void to_json(json& j, const Vec2& v) { j = json::array({v.x, v.y}); }
void from_json(const json& j, Vec2& v) {
  if (!j.is_array() || j.size() != 2) throw CodecError("expected [x, y]");
  v = {j[0].get<double>(), j[1].get<double>()};
}
void to_json(json& j, const Vec3& v) { j = json::array({v.x, v.y, v.z}); }
void from_json(const json& j, Vec3& v) {
  if (!j.is_array() || j.size() != 3) throw CodecError("expected [x, y, z]");
  v = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}
void to_json(json& j, const Rect& r) { j = json{{"min", r.min}, {"max", r.max}}; }
void from_json(const json& j, Rect& r) { r = {need<Vec2>(j, "min"), need<Vec2>(j, "max")}; }

void to_json(json& j, const ArenaSpec& a) {
  j = json{{"width", a.width}, {"height", a.height}, {"origin", a.origin}};
}
void from_json(const json& j, ArenaSpec& a) {
  a.width = need<double>(j, "width");
  a.height = need<double>(j, "height");
  a.origin = j.value("origin", Vec2{});
}

void to_json(json& j, const Command& c) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        j = json{{"type", command_name(c)}};
        if constexpr (std::is_same_v<T, PlaceTarget>) {
          j["robot"] = v.robot;
          j["pos"] = v.pos;
        } else if constexpr (std::is_same_v<T, PickTarget>) {
          j["robot"] = v.robot;
        } else if constexpr (std::is_same_v<T, DrawWall>) {
          j["a"] = v.a;
          j["b"] = v.b;
        } else if constexpr (std::is_same_v<T, PlaceCube>) {
          j["pos"] = v.pos;
        }
      },
      c);
}

void from_json(const json& j, Command& c) {
  const auto type = need<std::string>(j, "type");
  if (type == "PlaceTarget") c = PlaceTarget{need<int>(j, "robot"), need<Vec2>(j, "pos")};
  else if (type == "PickTarget") c = PickTarget{need<int>(j, "robot")};
  else if (type == "DrawWall") c = DrawWall{need<Vec2>(j, "a"), need<Vec2>(j, "b")};
  else if (type == "UndoWall") c = UndoWall{};
  else if (type == "PlaceCube") c = PlaceCube{need<Vec2>(j, "pos")};
  else if (type == "PickCube") c = PickCube{};
  else if (type == "ToggleWallMode") c = ToggleWallMode{};
  else throw CodecError("unknown command type: " + type);
}

void to_json(json& j, const ObjectRef& o) {
  if (o.kind == ObjectRef::Kind::Cube) {
    j = json{{"kind", "cube"}};
  } else {
    j = json{{"kind", "target"}, {"robot", o.robot}};
  }
}
void from_json(const json& j, ObjectRef& o) {
  const auto kind = need<std::string>(j, "kind");
  if (kind == "cube") o = ObjectRef::cube();
  else if (kind == "target") o = ObjectRef::target_of(need<int>(j, "robot"));
  else throw CodecError("unknown object kind: " + kind);
}

void to_json(json& j, const InteractionEvent& e) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, event::PinchStart>) {
          j = json{{"type", "PinchStart"}, {"hand", hand_name(v.hand)}, {"pos", v.pos}};
        } else if constexpr (std::is_same_v<T, event::PinchMove>) {
          j = json{{"type", "PinchMove"}, {"hand", hand_name(v.hand)}, {"pos", v.pos}};
        } else if constexpr (std::is_same_v<T, event::PinchEnd>) {
          j = json{{"type", "PinchEnd"}, {"hand", hand_name(v.hand)}, {"pos", v.pos}};
        } else if constexpr (std::is_same_v<T, event::TwoHandPinchScale>) {
          j = json{{"type", "TwoHandPinchScale"}, {"factor", v.factor}};
        } else if constexpr (std::is_same_v<T, event::FlyVector>) {
          j = json{{"type", "FlyVector"}, {"v", v.v}};
        } else if constexpr (std::is_same_v<T, event::GraspStart>) {
          j = json{{"type", "GraspStart"}, {"object", v.object}};
        } else if constexpr (std::is_same_v<T, event::GraspEnd>) {
          j = json{{"type", "GraspEnd"}, {"object", v.object}, {"release", v.release}};
        } else if constexpr (std::is_same_v<T, event::Touch>) {
          j = json{{"type", "Touch"}, {"button", v.button}};
        } else if constexpr (std::is_same_v<T, event::MenuShown>) {
          j = json{{"type", "MenuShown"}};
        } else {
          j = json{{"type", "MenuHidden"}};
        }
      },
      e);
}

void from_json(const json& j, InteractionEvent& e) {
  const auto type = need<std::string>(j, "type");
  if (type == "PinchStart") {
    e = event::PinchStart{parse_hand(need<std::string>(j, "hand")), need<Vec3>(j, "pos")};
  } else if (type == "PinchMove") {
    e = event::PinchMove{parse_hand(need<std::string>(j, "hand")), need<Vec3>(j, "pos")};
  } else if (type == "PinchEnd") {
    e = event::PinchEnd{parse_hand(need<std::string>(j, "hand")), need<Vec3>(j, "pos")};
  } else if (type == "TwoHandPinchScale") {
    e = event::TwoHandPinchScale{need<double>(j, "factor")};
  } else if (type == "FlyVector") {
    e = event::FlyVector{need<Vec3>(j, "v")};
  } else if (type == "GraspStart") {
    e = event::GraspStart{need<ObjectRef>(j, "object")};
  } else if (type == "GraspEnd") {
    e = event::GraspEnd{need<ObjectRef>(j, "object"), need<Vec3>(j, "release")};
  } else if (type == "Touch") {
    e = event::Touch{need<std::string>(j, "button")};
  } else if (type == "MenuShown") {
    e = event::MenuShown{};
  } else if (type == "MenuHidden") {
    e = event::MenuHidden{};
  } else {
    throw CodecError("unknown event type: " + type);
  }
}

void to_json(json& j, const HandData& h) {
  j = json{{"palm", h.palm_position}, {"normal", h.palm_normal}, {"thumb", h.thumb_tip},
           {"index", h.index_tip},     {"grab", h.grab_strength}};
}
void from_json(const json& j, HandData& h) {
  h.palm_position = need<Vec3>(j, "palm");
  h.palm_normal = need<Vec3>(j, "normal");
  h.thumb_tip = need<Vec3>(j, "thumb");
  h.index_tip = need<Vec3>(j, "index");
  h.grab_strength = need<double>(j, "grab");
}

void to_json(json& j, const HandFrame& f) {
  j = json{{"t", f.timestamp}, {"left", nullptr}, {"right", nullptr}};
  if (f.left) j["left"] = *f.left;
  if (f.right) j["right"] = *f.right;
}
void from_json(const json& j, HandFrame& f) {
  f.timestamp = need<double>(j, "t");
  f.left.reset();
  f.right.reset();
  if (j.contains("left") && !j["left"].is_null()) f.left = j["left"].get<HandData>();
  if (j.contains("right") && !j["right"].is_null()) f.right = j["right"].get<HandData>();
}

void to_json(json& j, const Snapshot& s) {
  json robots = json::array();
  for (const auto& r : s.robots) {
    json jr{{"id", r.id},       {"x", r.pose.position.x},        {"y", r.pose.position.y},
            {"heading", r.pose.heading}, {"radius", r.radius}, {"mode", mode_name(r.mode)}};
    if (r.target) jr["target"] = *r.target;
    robots.push_back(std::move(jr));
  }
  json walls = json::array();
  for (const auto& w : s.walls) {
    walls.push_back({{"id", w.id}, {"a", w.a}, {"b", w.b}, {"ordinal", w.ordinal}});
  }
  json fixtures = json::array();
  for (const auto& f : s.fixtures) fixtures.push_back({{"a", f.a}, {"b", f.b}});
  json regions = json::array();
  for (const auto& r : s.regions) {
    regions.push_back({{"id", r.id}, {"min", r.rect.min}, {"max", r.rect.max}, {"count", r.count}});
  }
  j = json{{"tick", s.tick},
           {"dt", s.dt},
           {"arena", s.arena},
           {"robots", std::move(robots)},
           {"walls", std::move(walls)},
           {"fixtures", std::move(fixtures)},
           {"cube",
            {{"pos", s.cube.position},
             {"status", s.cube.status == CubeStatus::Placed ? "placed" : "inactive"},
             {"placed_time", s.cube.placed_time}}},
           {"regions", std::move(regions)}};
}

void from_json(const json& j, Snapshot& s) {
  s.tick = need<std::int64_t>(j, "tick");
  s.dt = need<double>(j, "dt");
  s.arena = need<ArenaSpec>(j, "arena");
  s.robots.clear();
  for (const auto& jr : need<json>(j, "robots")) {
    RobotView r;
    r.id = need<int>(jr, "id");
    r.pose = {{need<double>(jr, "x"), need<double>(jr, "y")}, need<double>(jr, "heading")};
    r.radius = need<double>(jr, "radius");
    r.mode = parse_mode(need<std::string>(jr, "mode"));
    if (jr.contains("target")) r.target = jr["target"].get<Vec2>();
    s.robots.push_back(r);
  }
  s.walls.clear();
  for (const auto& jw : need<json>(j, "walls")) {
    s.walls.push_back({need<int>(jw, "id"), need<Vec2>(jw, "a"), need<Vec2>(jw, "b"),
                       need<std::int64_t>(jw, "ordinal")});
  }
  s.fixtures.clear();
  for (const auto& jf : j.value("fixtures", json::array())) {
    s.fixtures.push_back({need<Vec2>(jf, "a"), need<Vec2>(jf, "b")});
  }
  const json& jc = need<json>(j, "cube");
  s.cube.position = need<Vec2>(jc, "pos");
  s.cube.status = need<std::string>(jc, "status") == "placed" ? CubeStatus::Placed : CubeStatus::Inactive;
  s.cube.placed_time = jc.value("placed_time", 0.0);
  s.regions.clear();
  for (const auto& jr : need<json>(j, "regions")) {
    s.regions.push_back({need<int>(jr, "id"), {need<Vec2>(jr, "min"), need<Vec2>(jr, "max")},
                         need<int>(jr, "count")});
  }
}

void to_json(json& j, const Metrics& m) {
  j = json{{"completion_time", nullptr}, {"interaction_count", m.interaction_count},
           {"breakdown", m.breakdown}};
  if (m.completion_time) j["completion_time"] = *m.completion_time;
}
void from_json(const json& j, Metrics& m) {
  m.completion_time.reset();
  if (j.contains("completion_time") && !j["completion_time"].is_null()) {
    m.completion_time = j["completion_time"].get<double>();
  }
  m.interaction_count = need<int>(j, "interaction_count");
  m.breakdown = j.value("breakdown", std::map<std::string, int>{});
}

void to_json(json& j, const LogEntry& e) {
  j = json{{"type", "command"},   {"tick", e.tick},         {"session", e.session},
           {"command", e.command}, {"accepted", e.accepted}, {"interaction_count", e.interaction_count}};
  if (!e.error.empty()) j["error"] = e.error;
}
void from_json(const json& j, LogEntry& e) {
  e.tick = need<std::int64_t>(j, "tick");
  e.session = j.value("session", 0);
  e.command = need<Command>(j, "command");
  e.accepted = need<bool>(j, "accepted");
  e.interaction_count = need<int>(j, "interaction_count");
  e.error = j.value("error", std::string{});
}

std::string encode_snapshot(const Snapshot& s) { return json(s).dump(); }

Snapshot decode_snapshot(std::string_view text) {
  try {
    return json::parse(text).get<Snapshot>();
  } catch (const json::exception& e) {
    throw CodecError(e.what());
  }
}

std::uint64_t snapshot_hash(const Snapshot& s) { return fnv1a64(encode_snapshot(s)); }

}  // namespace giant
