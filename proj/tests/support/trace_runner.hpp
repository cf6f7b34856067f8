#pragma once

// Loads a gesture trace file and compares the FSM output with the expected
// per-frame events.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "giant/codec.hpp"
#include "giant/gestures.hpp"

namespace giant::testing {

struct TraceOutcome {
  std::string name;
  bool ok = true;
  std::string detail;
};

inline bool near(const json& a, const json& b, double tol = 1e-9) {
  if (a.is_number() && b.is_number()) return std::abs(a.get<double>() - b.get<double>()) <= tol;
  if (a.type() != b.type()) return false;
  if (a.is_array()) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!near(a[i], b[i], tol)) return false;
    }
    return true;
  }
  if (a.is_object()) {
    if (a.size() != b.size()) return false;
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key()) || !near(it.value(), b[it.key()], tol)) return false;
    }
    return true;
  }
  return a == b;
}

inline std::vector<std::filesystem::path> trace_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

inline TraceOutcome run_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  const json t = json::parse(in);
  TraceOutcome out{t.at("name").get<std::string>()};

  std::vector<Graspable> graspables;
  for (const auto& g : t.at("graspables")) {
    graspables.push_back({g.at("object").get<ObjectRef>(), {g.at("min").get<Vec3>(), g.at("max").get<Vec3>()}});
  }
  std::map<std::size_t, json> expected;
  for (const auto& e : t.at("expected")) expected[e.at("frame").get<std::size_t>()] = e.at("events");
  std::vector<std::size_t> dropped = t.at("dropped").get<std::vector<std::size_t>>();

  GestureFsm fsm;
  const auto& frames = t.at("frames");
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const GestureUpdate u = fsm.update(frames[k].get<HandFrame>(), graspables);
    const bool want_drop = std::find(dropped.begin(), dropped.end(), k) != dropped.end();
    if (u.dropped != want_drop) {
      out.ok = false;
      out.detail = "frame " + std::to_string(k) + (u.dropped ? " unexpectedly dropped" : " not dropped");
      return out;
    }
    json got = json::array();
    for (const auto& e : u.events) got.push_back(json(e));
    const json want = expected.count(k) ? expected[k] : json::array();
    if (!near(got, want)) {
      out.ok = false;
      out.detail = "frame " + std::to_string(k) + ": expected " + want.dump() + ", got " + got.dump();
      return out;
    }
  }
  if (t.contains("final_avatar")) {
    const json& a = t["final_avatar"];
    const AvatarState& av = fsm.avatar();
    const bool pos_ok = near(json(av.position), a.at("position"));
    const bool scale_ok = std::abs(av.world_scale - a.at("world_scale").get<double>()) <= 1e-9;
    const bool mode_ok = av.wall_mode == a.value("wall_mode", false);
    if (!pos_ok || !scale_ok || !mode_ok) {
      out.ok = false;
      std::ostringstream os;
      os << "final avatar: position " << json(av.position).dump() << " scale " << av.world_scale << " wall_mode "
         << av.wall_mode << ", expected " << a.dump();
      out.detail = os.str();
    }
  }
  return out;
}

}  // namespace giant::testing
