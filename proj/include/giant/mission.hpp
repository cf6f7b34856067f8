#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "giant/interaction.hpp"
#include "giant/world.hpp"

namespace giant {

struct Segment {
  Vec2 a;
  Vec2 b;
  Vec2 center() const { return (a + b) * 0.5; }
  bool operator==(const Segment&) const = default;
};

struct TaskRegion {
  int id = 0;
  std::string name;
  Rect rect;
  int demand = 1;
  std::optional<Segment> opening;  // doorway used by scripted operators
  bool operator==(const TaskRegion&) const = default;
};

struct MissionSpec {
  std::vector<TaskRegion> regions;
  double dwell_time = 5.0;
  double timeout = 1200.0;
};

struct MissionState {
  MissionSpec spec;
  double dt = 0.05;
  std::vector<int> counts;
  std::vector<double> dwell;  // seconds, per region
  std::int64_t start_tick = 0;
  std::optional<std::int64_t> satisfied_since;
  std::optional<std::int64_t> complete_tick;
  std::int64_t last_tick = 0;

  bool complete() const { return complete_tick.has_value(); }
  bool demands_met() const;
};

struct Metrics {
  std::optional<double> completion_time;
  int interaction_count = 0;
  std::map<std::string, int> breakdown;  // counted commands by type
  bool operator==(const Metrics&) const = default;
};

MissionState start_mission(MissionSpec spec, double dt, std::int64_t start_tick = 0);

// Counts are recomputed from the snapshot; completion latches once.
MissionState update(MissionState mission, const Snapshot& snapshot);

Metrics metrics(const MissionState& mission, const SessionState& session);
// Aggregates counted commands across several sessions.
Metrics metrics(const MissionState& mission, const std::vector<const SessionState*>& sessions);

}  // namespace giant
