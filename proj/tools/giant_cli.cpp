// giant: serve, run, replay and experiment entry points.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "giant/codec.hpp"
#include "giant/hash.hpp"
#include "giant/operator_sim.hpp"
#include "giant/protocol.hpp"
#include "giant/record.hpp"
#include "giant/scenario.hpp"
#include "giant/server.hpp"

namespace fs = std::filesystem;
using namespace giant;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kHashMismatch = 3 };

std::atomic<bool> g_interrupted{false};

void on_signal(int) { g_interrupted = true; }

std::string timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y%m%dT%H%M%SZ");
  return os.str();
}

fs::path output_root(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("GIANT_LOG_DIR"); env != nullptr && *env != '\0') return env;
  return "runs";
}

// Creates <root>/<cmd>-<timestamp>-s<seed>, adding a suffix if it exists.
fs::path make_run_dir(const fs::path& root, const std::string& cmd, std::uint64_t seed) {
  const std::string base = cmd + "-" + timestamp() + "-s" + std::to_string(seed);
  fs::path dir = root / base;
  for (int k = 1; fs::exists(dir); ++k) dir = root / (base + "-" + std::to_string(k));
  fs::create_directories(dir);
  return dir;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void write_manifest(const fs::path& dir, const std::string& cmd, const Scenario& scenario,
                    const std::string& scenario_path, std::uint64_t seed, json extra = json::object()) {
  json m{{"command", cmd},
         {"version", kVersion},
         {"protocol_version", kProtocolVersion},
         {"log_format_version", kLogFormatVersion},
         {"scenario", scenario.name},
         {"scenario_path", scenario_path},
         {"seed", seed},
         {"config_hash", config_hash(scenario, seed)},
         {"created", timestamp()}};
  m.update(extra);
  write_json(dir / "manifest.json", m);
}

Scenario load(const std::string& path) {
  if (path == "builtin:mission") return parse_scenario(reference_mission_config());
  return load_scenario(path);
}

std::uint64_t seed_or_default(const std::optional<std::uint64_t>& flag, const Scenario& s) {
  return flag.value_or(s.world.seed);
}

std::optional<OperatorPolicy> policy_from_flag(const std::string& name, const Scenario& s) {
  if (name.empty() || name == "none") return std::nullopt;
  return make_policy(s, parse_strategy(name));
}

json metrics_json(const Metrics& m, const std::string& hash, std::uint64_t seed) {
  json j = m;
  j["config_hash"] = hash;
  j["seed"] = seed;
  return j;
}

struct Common {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("-c,--scenario", c.scenario, "Scenario JSON file (or builtin:mission)")->required();
  app->add_option("-s,--seed", c.seed, "Seed; defaults to the scenario seed");
  app->add_option("-o,--out", c.out, "Output root directory (env GIANT_LOG_DIR)");
}

int cmd_run(const Common& c, std::optional<double> duration, const std::string& strategy, int stride,
            bool keep_running) {
  const Scenario scenario = load(c.scenario);
  const std::uint64_t seed = seed_or_default(c.seed, scenario);
  RunOptions options;
  options.policy = policy_from_flag(strategy, scenario);
  options.duration = duration;
  options.stop_on_completion = !keep_running;

  const fs::path dir = make_run_dir(output_root(c.out), "run", seed);
  std::ofstream snaps(dir / "snapshots.jsonl");
  snaps << json{{"type", "header"}, {"config_hash", config_hash(scenario, seed)}, {"seed", seed},
                {"stride", stride}}
               .dump()
        << '\n';
  options.on_snapshot = [&](const Snapshot& s) {
    if (s.tick % stride == 0) snaps << encode_snapshot(s) << '\n';
  };

  const auto t0 = std::chrono::steady_clock::now();
  const RunResult r = run_headless(scenario, seed, options);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.final_snapshot.tick % stride != 0) snaps << encode_snapshot(r.final_snapshot) << '\n';

  SessionLog log{r.config_hash, seed, scenario.world.dt, scenario.name, r.log, r.end_tick,
                 hex64(snapshot_hash(r.final_snapshot)), r.metrics};
  write_session_log(dir / "commands.jsonl", log);
  write_json(dir / "metrics.json", metrics_json(r.metrics, r.config_hash, seed));
  write_manifest(dir, "run", scenario, c.scenario, seed,
                 {{"strategy", strategy.empty() ? "none" : strategy}, {"end_tick", r.end_tick},
                  {"final_snapshot_hash", log.final_snapshot_hash}, {"wall_seconds", wall}});

  std::cout << "output: " << dir.string() << '\n'
            << "ticks: " << r.end_tick << "  sim/wall: "
            << (wall > 0 ? static_cast<double>(r.end_tick) * scenario.world.dt / wall : 0.0) << "x\n";
  if (r.metrics.completion_time) std::cout << "completion_time: " << *r.metrics.completion_time << " s\n";
  else if (r.mission) std::cout << "completion_time: not reached\n";
  std::cout << "interaction_count: " << r.metrics.interaction_count << '\n';
  return kOk;
}

int cmd_replay(const Common& c, const std::string& log_path) {
  const Scenario scenario = load(c.scenario);
  const SessionLog log = read_session_log(fs::path(log_path));
  const std::uint64_t seed = c.seed.value_or(log.seed);
  ReplayResult r;
  try {
    r = replay(log, scenario, seed);
  } catch (const ReplayMismatch& e) {
    std::cerr << "replay refused: " << e.what() << '\n';
    return kHashMismatch;
  }
  const std::string hash = hex64(snapshot_hash(r.final_snapshot));
  const fs::path dir = make_run_dir(output_root(c.out), "replay", seed);
  if (r.metrics) write_json(dir / "metrics.json", metrics_json(*r.metrics, log.config_hash, seed));
  std::ofstream(dir / "final_snapshot.json") << encode_snapshot(r.final_snapshot) << '\n';
  const bool match = log.final_snapshot_hash.empty() || log.final_snapshot_hash == hash;
  write_manifest(dir, "replay", scenario, c.scenario, seed,
                 {{"log", log_path}, {"final_snapshot_hash", hash}, {"matches_log", match}});
  std::cout << "output: " << dir.string() << '\n' << "final_snapshot_hash: " << hash << '\n';
  if (!match) {
    std::cerr << "final snapshot differs from the recorded hash " << log.final_snapshot_hash << '\n';
    return kFailure;
  }
  return kOk;
}

std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dots = part.find("..");
    if (dots != std::string::npos) {
      const auto lo = std::stoull(part.substr(0, dots));
      const auto hi = std::stoull(part.substr(dots + 2));
      if (hi < lo) throw CLI::ValidationError("--seeds", "empty range " + part);
      for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    } else if (!part.empty()) {
      seeds.push_back(std::stoull(part));
    }
  }
  if (seeds.empty()) throw CLI::ValidationError("--seeds", "no seeds given");
  return seeds;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int cmd_experiment(const Common& c, const std::string& seeds_spec, const std::vector<std::string>& strategies) {
  const Scenario scenario = load(c.scenario);
  if (!scenario.mission) throw ConfigError("experiment requires a scenario with a mission");
  const auto seeds = parse_seeds(seeds_spec);
  const fs::path dir = make_run_dir(output_root(c.out), "experiment", seeds.front());

  std::ofstream csv(dir / "results.csv");
  csv << "strategy,seed,completed,completion_time,interaction_count,config_hash\n";
  json report{{"scenario", scenario.name}, {"seeds", seeds}, {"strategies", json::object()}};
  for (const auto& name : strategies) {
    const OperatorPolicy policy = make_policy(scenario, parse_strategy(name));
    std::vector<double> interactions;
    std::vector<double> times;
    int completed = 0;
    json runs = json::array();
    for (auto seed : seeds) {
      const RunResult r = run_experiment(seed, policy, scenario);
      const bool done = r.metrics.completion_time.has_value();
      completed += done ? 1 : 0;
      interactions.push_back(r.metrics.interaction_count);
      if (done) times.push_back(*r.metrics.completion_time);
      csv << strategy_name(policy.strategy) << ',' << seed << ',' << (done ? 1 : 0) << ','
          << (done ? std::to_string(*r.metrics.completion_time) : "") << ',' << r.metrics.interaction_count
          << ',' << r.config_hash << '\n';
      runs.push_back(metrics_json(r.metrics, r.config_hash, seed));
      std::cout << strategy_name(policy.strategy) << " seed " << seed << ": "
                << (done ? "complete at " + std::to_string(*r.metrics.completion_time) + " s" : "timeout")
                << ", interactions " << r.metrics.interaction_count << '\n';
    }
    report["strategies"][std::string(strategy_name(policy.strategy))] = {
        {"completed", completed},
        {"runs", runs},
        {"median_interactions", median(interactions)},
        {"median_completion_time", times.empty() ? json(nullptr) : json(median(times))}};
  }
  write_json(dir / "report.json", report);
  write_manifest(dir, "experiment", scenario, c.scenario, seeds.front(),
                 {{"seeds", seeds}, {"strategies", strategies}});

  std::cout << "\nstrategy     completed  median_interactions  median_time\n";
  for (auto& [name, s] : report["strategies"].items()) {
    std::cout << std::left << std::setw(13) << name << std::setw(11)
              << (std::to_string(s["completed"].get<int>()) + "/" + std::to_string(seeds.size()))
              << std::setw(21) << s["median_interactions"].get<double>()
              << (s["median_completion_time"].is_null() ? std::string("-")
                                                        : std::to_string(s["median_completion_time"].get<double>()))
              << '\n';
  }
  std::cout << "output: " << dir.string() << '\n';
  return kOk;
}

int cmd_serve(const Common& c, ServerOptions options, std::optional<double> duration) {
  const Scenario scenario = load(c.scenario);
  options.seed = c.seed;
  Server server(scenario, options);
  server.start();
  std::cout << "listening on ws://" << options.address << ':' << server.port() << "  config " << server.config_hash()
            << std::endl;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  const auto t0 = std::chrono::steady_clock::now();
  while (!g_interrupted) {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
    if (duration && std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() >= *duration) break;
  }
  server.stop();
  std::cout << "stopped at tick " << server.tick() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"giant: swarm simulator with virtual-giant interaction"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common run_c, replay_c, exp_c, serve_c;

  auto* run = app.add_subcommand("run", "Headless simulation writing snapshots, commands and metrics");
  add_common(run, run_c);
  std::optional<double> run_duration;
  std::string run_strategy;
  int stride = 1;
  bool keep_running = false;
  run->add_option("-d,--duration", run_duration, "Simulated seconds; defaults to the mission timeout");
  run->add_option("--strategy", run_strategy, "Scripted operator: strategy1, strategy2 or none");
  run->add_option("--snapshot-stride", stride, "Write every n-th snapshot")->check(CLI::PositiveNumber);
  run->add_flag("--no-stop", keep_running, "Keep running after mission completion");

  auto* rep = app.add_subcommand("replay", "Re-execute a recorded command log");
  add_common(rep, replay_c);
  std::string log_path;
  rep->add_option("-l,--log", log_path, "Session log (commands.jsonl)")->required()->check(CLI::ExistingFile);

  auto* exp = app.add_subcommand("experiment", "Scripted-operator batch over seeds and strategies");
  add_common(exp, exp_c);
  std::string seeds = "1..10";
  std::vector<std::string> strategies{"strategy1", "strategy2"};
  exp->add_option("--seeds", seeds, "Seeds, e.g. 1..10 or 3,5,8");
  exp->add_option("--strategies", strategies, "Strategies to run");

  auto* serve = app.add_subcommand("serve", "WebSocket server for interactive clients");
  add_common(serve, serve_c);
  ServerOptions sopt;
  if (const char* env = std::getenv("GIANT_PORT"); env != nullptr && *env != '\0') {
    sopt.port = static_cast<unsigned short>(std::stoul(env));
  }
  std::optional<double> serve_duration;
  std::string record_path;
  serve->add_option("--address", sopt.address, "Bind address");
  serve->add_option("-p,--port", sopt.port, "Port (env GIANT_PORT; 0 = ephemeral)");
  serve->add_option("--snapshot-rate", sopt.snapshot_rate, "Snapshot rate in Hz")->check(CLI::PositiveNumber);
  serve->add_option("--realtime-factor", sopt.realtime_factor, "Simulation speed relative to wall clock")
      ->check(CLI::PositiveNumber);
  serve->add_option("--snapshot-delay", sopt.snapshot_delay, "Artificial snapshot delay in seconds")
      ->check(CLI::NonNegativeNumber);
  serve->add_option("--record", record_path, "Record the session log to this file");
  serve->add_option("-d,--duration", serve_duration, "Stop after this many wall-clock seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(run_c, run_duration, run_strategy, stride, keep_running);
    if (*rep) return cmd_replay(replay_c, log_path);
    if (*exp) return cmd_experiment(exp_c, seeds, strategies);
    if (*serve) {
      if (!record_path.empty()) sopt.record_path = record_path;
      return cmd_serve(serve_c, sopt, serve_duration);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
