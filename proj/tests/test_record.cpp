#include <gtest/gtest.h>

#include <sstream>

#include "giant/codec.hpp"
#include "giant/hash.hpp"
#include "giant/operator_sim.hpp"
#include "giant/record.hpp"

using namespace giant;

namespace {

SessionLog log_of(const Scenario& sc, const RunResult& r) {
  return {r.config_hash, r.seed, sc.world.dt, sc.name, r.log, r.end_tick, hex64(snapshot_hash(r.final_snapshot)),
          r.metrics};
}

}  // namespace

TEST(Record, LogRoundTrip) {
  SessionLog log;
  log.config_hash = "0123456789abcdef";
  log.seed = 9;
  log.scenario_name = "x";
  log.entries.push_back({3, PlaceTarget{1, {0.5, 0.25}}, true, 1, "", 0});
  log.entries.push_back({7, DrawWall{{0, 0}, {0, 0}}, false, 1, "degenerate wall segment", 2});
  log.end_tick = 40;
  log.final_snapshot_hash = "ffff";
  log.metrics = Metrics{std::nullopt, 1, {{"PlaceTarget", 1}}};
  std::stringstream ss;
  write_session_log(ss, log);
  const SessionLog back = read_session_log(ss);
  EXPECT_EQ(back.config_hash, log.config_hash);
  EXPECT_EQ(back.seed, 9u);
  ASSERT_EQ(back.entries.size(), 2u);
  EXPECT_EQ(back.entries[1].command, log.entries[1].command);
  EXPECT_EQ(back.entries[1].error, log.entries[1].error);
  EXPECT_EQ(back.entries[1].session, 2);
  EXPECT_EQ(back.end_tick, 40);
  EXPECT_EQ(back.metrics, log.metrics);
}

TEST(Record, MalformedLogsRejected) {
  std::stringstream no_header(R"({"type":"end","tick":1,"final_snapshot_hash":""})");
  EXPECT_THROW(read_session_log(no_header), CodecError);
  std::stringstream garbage("{not json\n");
  EXPECT_THROW(read_session_log(garbage), CodecError);
  std::stringstream wrong_version(R"({"type":"header","version":99,"config_hash":"","seed":0,"dt":0.05})");
  EXPECT_THROW(read_session_log(wrong_version), CodecError);
}

TEST(Replay, OperatorRunReproducesSnapshotAndMetrics) {
  const Scenario sc = parse_scenario(reference_mission_config(42));
  RunOptions opts;
  opts.policy = make_policy(sc, Strategy::Strategy1);
  opts.duration = 60.0;
  const RunResult r = run_headless(sc, 42, opts);
  ASSERT_FALSE(r.log.empty());

  std::stringstream ss;
  write_session_log(ss, log_of(sc, r));
  const ReplayResult rep = replay(read_session_log(ss), sc, 42);
  EXPECT_EQ(encode_snapshot(rep.final_snapshot), encode_snapshot(r.final_snapshot));
  ASSERT_TRUE(rep.metrics.has_value());
  EXPECT_EQ(rep.metrics->interaction_count, r.metrics.interaction_count);
  EXPECT_EQ(*rep.metrics, r.metrics);
}

TEST(Replay, AlteredSeedRefused) {
  const Scenario sc = parse_scenario(reference_mission_config(42));
  RunOptions opts;
  opts.duration = 1.0;
  const RunResult r = run_headless(sc, 42, opts);
  EXPECT_THROW(replay(log_of(sc, r), sc, 43), ReplayMismatch);
}

TEST(Replay, AlteredScenarioRefused) {
  const Scenario sc = parse_scenario(reference_mission_config(42));
  RunOptions opts;
  opts.duration = 1.0;
  const RunResult r = run_headless(sc, 42, opts);
  json changed = reference_mission_config(42);
  changed["mission"]["dwell_time"] = 6.0;
  EXPECT_THROW(replay(log_of(sc, r), parse_scenario(changed), 42), ReplayMismatch);
}

TEST(Replay, MultipleSessionsCountedSeparately) {
  const Scenario sc = parse_scenario(json{{"name", "two"}, {"seed", 4},
                                          {"robots", {{{"x", 0.3}, {"y", 0.3}}, {{"x", 0.6}, {"y", 1.0}}}}});
  SessionLog log;
  log.config_hash = config_hash(sc, 4);
  log.seed = 4;
  log.entries = {{2, PlaceTarget{0, {0.5, 0.5}}, true, 1, "", 1},
                 {2, PlaceTarget{0, {0.6, 0.6}}, true, 1, "", 2},
                 {5, UndoWall{}, true, 2, "", 1}};
  log.end_tick = 10;
  const ReplayResult rep = replay(log, sc, 4);
  ASSERT_TRUE(rep.metrics.has_value());
  EXPECT_EQ(rep.metrics->interaction_count, 3);
  // Later placement in the same tick wins.
  EXPECT_EQ(rep.final_snapshot.robot(0)->target, std::optional<Vec2>(Vec2{0.6, 0.6}));
}
