#include "giant/record.hpp"

#include <fstream>
#include <map>

#include "giant/codec.hpp"
#include "giant/hash.hpp"

namespace giant {

json log_header(const std::string& config_hash, std::uint64_t seed, double dt, const std::string& scenario_name) {
  return json{{"type", "header"}, {"version", kLogFormatVersion}, {"config_hash", config_hash},
              {"seed", seed},     {"dt", dt},                     {"scenario", scenario_name}};
}

json log_end(std::int64_t end_tick, const std::string& final_snapshot_hash, const std::optional<Metrics>& metrics) {
  json j{{"type", "end"}, {"tick", end_tick}, {"final_snapshot_hash", final_snapshot_hash}};
  if (metrics) j["metrics"] = *metrics;
  return j;
}

void write_session_log(std::ostream& out, const SessionLog& log) {
  out << log_header(log.config_hash, log.seed, log.dt, log.scenario_name).dump() << '\n';
  for (const auto& e : log.entries) out << json(e).dump() << '\n';
  out << log_end(log.end_tick, log.final_snapshot_hash, log.metrics).dump() << '\n';
}

void write_session_log(const std::filesystem::path& path, const SessionLog& log) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_session_log(out, log);
}

SessionLog read_session_log(std::istream& in) {
  SessionLog log;
  std::string line;
  bool have_header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw CodecError("log line " + std::to_string(lineno) + ": " + e.what());
    }
    const auto type = j.value("type", std::string{});
    if (type == "header") {
      if (j.value("version", 0) != kLogFormatVersion) throw CodecError("unsupported log version");
      log.config_hash = j.at("config_hash").get<std::string>();
      log.seed = j.at("seed").get<std::uint64_t>();
      log.dt = j.at("dt").get<double>();
      log.scenario_name = j.value("scenario", std::string{});
      have_header = true;
    } else if (type == "command") {
      log.entries.push_back(j.get<LogEntry>());
    } else if (type == "end") {
      log.end_tick = j.at("tick").get<std::int64_t>();
      log.final_snapshot_hash = j.value("final_snapshot_hash", std::string{});
      if (j.contains("metrics")) log.metrics = j["metrics"].get<Metrics>();
    } else {
      throw CodecError("log line " + std::to_string(lineno) + ": unknown record type");
    }
  }
  if (!have_header) throw CodecError("session log has no header");
  return log;
}

SessionLog read_session_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_session_log(in);
}

ReplayResult replay(const SessionLog& log, const Scenario& scenario, std::uint64_t seed) {
  const std::string hash = config_hash(scenario, seed);
  if (hash != log.config_hash) {
    throw ReplayMismatch("config hash mismatch: log " + log.config_hash + ", scenario " + hash);
  }
  World world = build_world(scenario, seed);
  std::optional<MissionState> mission;
  if (scenario.mission) mission = start_mission(*scenario.mission, world.dt(), world.tick());

  std::map<int, SessionState> sessions;
  std::size_t next = 0;
  std::vector<Command> cmds;
  std::vector<int> owners;
  Snapshot snap = world.snapshot();
  while (world.tick() < log.end_tick) {
    cmds.clear();
    owners.clear();
    while (next < log.entries.size() && log.entries[next].tick == world.tick()) {
      cmds.push_back(log.entries[next].command);
      owners.push_back(log.entries[next].session);
      ++next;
    }
    if (next < log.entries.size() && log.entries[next].tick < world.tick()) {
      throw CodecError("session log commands are not in tick order");
    }
    const std::int64_t tick = world.tick();
    const auto results = world.step(cmds);
    for (std::size_t i = 0; i < cmds.size(); ++i) {
      SessionState& s = sessions[owners[i]];
      s.rule = scenario.counting;
      record_command(s, tick, cmds[i], results[i], owners[i]);
    }
    snap = world.snapshot();
    if (mission) *mission = update(std::move(*mission), snap);
  }

  ReplayResult out;
  out.final_snapshot = std::move(snap);
  std::vector<const SessionState*> all;
  for (const auto& [id, s] : sessions) all.push_back(&s);
  out.metrics = metrics(mission ? *mission : start_mission({}, world.dt(), 0), all);
  out.mission = std::move(mission);
  return out;
}

}  // namespace giant
