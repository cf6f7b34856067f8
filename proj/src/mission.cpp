#include "giant/mission.hpp"

#include <cmath>

namespace giant {

bool MissionState::demands_met() const {
  for (std::size_t i = 0; i < spec.regions.size(); ++i) {
    if (counts[i] < spec.regions[i].demand) return false;
  }
  return true;
}

MissionState start_mission(MissionSpec spec, double dt, std::int64_t start_tick) {
  MissionState m;
  m.counts.assign(spec.regions.size(), 0);
  m.dwell.assign(spec.regions.size(), 0.0);
  m.spec = std::move(spec);
  m.dt = dt;
  m.start_tick = start_tick;
  m.last_tick = start_tick;
  return m;
}

MissionState update(MissionState m, const Snapshot& snapshot) {
  m.last_tick = snapshot.tick;
  for (std::size_t i = 0; i < m.spec.regions.size(); ++i) {
    int n = 0;
    for (const auto& r : snapshot.robots) {
      if (m.spec.regions[i].rect.contains(r.pose.position)) ++n;
    }
    m.counts[i] = n;
  }
  if (m.complete()) return m;

  if (m.demands_met()) {
    if (!m.satisfied_since) m.satisfied_since = snapshot.tick;
    const std::int64_t held = snapshot.tick - *m.satisfied_since;
    for (auto& d : m.dwell) d = static_cast<double>(held) * m.dt;
    const auto needed = static_cast<std::int64_t>(std::ceil(m.spec.dwell_time / m.dt - 1e-9));
    if (held >= needed) m.complete_tick = snapshot.tick;
  } else {
    m.satisfied_since.reset();
    for (auto& d : m.dwell) d = 0.0;
  }
  return m;
}

Metrics metrics(const MissionState& mission, const std::vector<const SessionState*>& sessions) {
  Metrics out;
  if (mission.complete_tick) {
    out.completion_time = static_cast<double>(*mission.complete_tick - mission.start_tick) * mission.dt;
  }
  for (const SessionState* s : sessions) {
    out.interaction_count += s->interaction_count;
    for (const auto& e : s->command_log) {
      if (e.accepted && counts_as_interaction(e.command, s->rule)) {
        ++out.breakdown[std::string(command_name(e.command))];
      }
    }
  }
  return out;
}

Metrics metrics(const MissionState& mission, const SessionState& session) {
  return metrics(mission, std::vector<const SessionState*>{&session});
}

}  // namespace giant
