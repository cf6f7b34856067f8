#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "giant/interaction.hpp"
#include "giant/mission.hpp"
#include "giant/scenario.hpp"

namespace giant {

inline constexpr int kLogFormatVersion = 1;

// Line-delimited session log: one header record, one record per command
// (tick, session, command, accepted, running interaction count) and an end
// record with the final tick and snapshot hash.
struct SessionLog {
  std::string config_hash;
  std::uint64_t seed = 0;
  double dt = 0.05;
  std::string scenario_name;
  std::vector<LogEntry> entries;
  std::int64_t end_tick = 0;
  std::string final_snapshot_hash;
  std::optional<Metrics> metrics;
};

class ReplayMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json log_header(const std::string& config_hash, std::uint64_t seed, double dt,
                          const std::string& scenario_name);
nlohmann::json log_end(std::int64_t end_tick, const std::string& final_snapshot_hash,
                       const std::optional<Metrics>& metrics);

void write_session_log(std::ostream& out, const SessionLog& log);
void write_session_log(const std::filesystem::path& path, const SessionLog& log);
SessionLog read_session_log(std::istream& in);
SessionLog read_session_log(const std::filesystem::path& path);

struct ReplayResult {
  Snapshot final_snapshot;
  std::optional<Metrics> metrics;
  std::optional<MissionState> mission;
};

// Re-executes the logged commands tick by tick. Throws ReplayMismatch when the
// scenario/seed hash differs from the log header.
ReplayResult replay(const SessionLog& log, const Scenario& scenario, std::uint64_t seed);

}  // namespace giant
