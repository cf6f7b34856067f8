#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "giant/gestures.hpp"
#include "giant/interaction.hpp"
#include "giant/mission.hpp"
#include "giant/scenario.hpp"

namespace giant {

enum class Strategy { Strategy1, Strategy2 };

std::string_view strategy_name(Strategy s);
Strategy parse_strategy(std::string_view s);

struct OperatorPolicy {
  Strategy strategy = Strategy::Strategy1;
  OperatorTunables tunables;
};

// Policy using the scenario's operator tunables.
OperatorPolicy make_policy(const Scenario& scenario, Strategy strategy);

// Scripted stand-in for a human operator. Strategy1 only picks and places
// robots; Strategy2 also seals a region's doorway with a virtual wall once the
// region holds its demand.
class ScriptedOperator {
 public:
  ScriptedOperator(OperatorPolicy policy, MissionSpec spec, std::uint64_t seed);

  std::vector<InteractionEvent> decide(const Snapshot& snapshot, const MissionState& mission);

  const std::vector<int>& sealed() const { return sealed_; }
  const OperatorPolicy& policy() const { return policy_; }

 private:
  std::optional<std::vector<InteractionEvent>> maintain_seals(const Snapshot& s, const std::vector<int>& counts);
  std::optional<std::vector<InteractionEvent>> allocate(const Snapshot& s, const std::vector<int>& counts);
  std::optional<Vec2> entry_target(const Snapshot& s, const RobotView& robot, const TaskRegion& region);
  Vec2 staging_target(const TaskRegion& region, const ArenaSpec& arena, double radius) const;
  std::optional<Vec2> exit_target(const Snapshot& s, const RobotView& robot, const TaskRegion& region) const;
  bool is_sealed(int region_index) const;

  OperatorPolicy policy_;
  MissionSpec spec_;
  RngStream rng_;
  std::vector<int> sealed_;  // region indices in wall-creation order
};

struct RunOptions {
  std::optional<OperatorPolicy> policy;
  std::optional<double> duration;  // seconds; defaults to the mission timeout
  bool stop_on_completion = true;
  std::function<void(const Snapshot&)> on_snapshot;
};

struct RunResult {
  std::uint64_t seed = 0;
  std::string config_hash;
  Metrics metrics;
  std::vector<LogEntry> log;
  Snapshot final_snapshot;
  std::int64_t end_tick = 0;
  std::optional<MissionState> mission;
};

// Headless closed loop: world + scripted events through the session layer.
RunResult run_headless(const Scenario& scenario, std::uint64_t seed, const RunOptions& options);

RunResult run_experiment(std::uint64_t seed, const OperatorPolicy& policy, const Scenario& scenario);

}  // namespace giant
