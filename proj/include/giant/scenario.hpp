#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "giant/interaction.hpp"
#include "giant/mission.hpp"
#include "giant/world.hpp"

namespace giant {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OperatorTunables {
  double decision_period = 2.0;
  double target_depth_min = 0.3;
  double target_depth_max = 0.9;
  double target_margin = 0.12;   // keep placed targets this far from region edges
  double exit_depth = 0.45;      // eviction target distance beyond the doorway
  double approach_depth = 0.3;   // staging point in front of a doorway
  double approach_alignment = 0.5;  // min cosine between approach and door normal
};

struct ServerTunables {
  double snapshot_rate = 20.0;
};

struct Scenario {
  std::string name;
  WorldConfig world;
  std::vector<Pose> spawns;
  std::optional<Vec2> initial_cube;
  std::optional<MissionSpec> mission;
  OperatorTunables operator_tunables;
  ServerTunables server;
  CountingRule counting;
  nlohmann::json source;  // parsed file, used for the config hash
};

Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);

// Effective configuration: the source document with `seed` replaced.
nlohmann::json effective_config(const Scenario& s, std::uint64_t seed);
std::string config_hash(const Scenario& s, std::uint64_t seed);

// World with fixtures, regions, spawned robots and (optionally) the cube.
World build_world(const Scenario& s, std::uint64_t seed);

// The reference task-allocation mission: 6 m x 4 m arena, three rooms along
// the top edge with demands 25/15/10 and 50 robots in a central cluster.
nlohmann::json reference_mission_config(std::uint64_t seed = 42);

}  // namespace giant
