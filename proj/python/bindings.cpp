// Python extension. Values cross the boundary as JSON text; the giant_swarm
// package turns them into dicts.

#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "giant/behaviors.hpp"
#include "giant/codec.hpp"
#include "giant/hash.hpp"
#include "giant/operator_sim.hpp"
#include "giant/protocol.hpp"
#include "giant/record.hpp"
#include "giant/scenario.hpp"

namespace py = pybind11;
using namespace giant;

namespace {

std::string log_text(const RunResult& r, const Scenario& s) {
  SessionLog log;
  log.config_hash = r.config_hash;
  log.seed = r.seed;
  log.dt = r.final_snapshot.dt;
  log.scenario_name = s.name;
  log.entries = r.log;
  log.end_tick = r.end_tick;
  log.final_snapshot_hash = hex64(snapshot_hash(r.final_snapshot));
  log.metrics = r.metrics;
  std::ostringstream out;
  write_session_log(out, log);
  return out.str();
}

std::string run(const std::string& scenario_json, std::uint64_t seed, std::optional<std::string> strategy,
                std::optional<double> duration, bool stop_on_completion) {
  const Scenario s = parse_scenario(json::parse(scenario_json));
  RunOptions opts;
  if (strategy) opts.policy = make_policy(s, parse_strategy(*strategy));
  opts.duration = duration;
  opts.stop_on_completion = stop_on_completion;
  RunResult r;
  {
    py::gil_scoped_release release;
    r = run_headless(s, seed, opts);
  }
  json out{{"seed", r.seed},
           {"config_hash", r.config_hash},
           {"end_tick", r.end_tick},
           {"metrics", r.metrics},
           {"final_snapshot", r.final_snapshot},
           {"final_snapshot_hash", hex64(snapshot_hash(r.final_snapshot))},
           {"session_log", log_text(r, s)}};
  return out.dump();
}

std::string replay_log(const std::string& log_jsonl, const std::string& scenario_json, std::uint64_t seed) {
  std::istringstream in(log_jsonl);
  const SessionLog log = read_session_log(in);
  const Scenario s = parse_scenario(json::parse(scenario_json));
  const ReplayResult r = replay(log, s, seed);
  json out{{"final_snapshot", r.final_snapshot}, {"final_snapshot_hash", hex64(snapshot_hash(r.final_snapshot))}};
  out["metrics"] = r.metrics ? json(*r.metrics) : json(nullptr);
  return out.dump();
}

class PyWorld {
 public:
  PyWorld(const std::string& scenario_json, std::uint64_t seed)
      : world_(build_world(parse_scenario(json::parse(scenario_json)), seed)) {}

  std::string step(const std::string& commands_json, int ticks) {
    std::vector<Command> cmds = json::parse(commands_json).get<std::vector<Command>>();
    json results = json::array();
    for (const auto& res : world_.step(cmds)) {
      results.push_back({{"accepted", res.accepted}, {"error", res.error}});
    }
    for (int k = 1; k < ticks; ++k) world_.step();
    return results.dump();
  }

  std::string snapshot() const { return json(world_.snapshot()).dump(); }
  std::int64_t tick() const { return world_.tick(); }

 private:
  World world_;
};

}  // namespace

PYBIND11_MODULE(_giant, m) {
  m.doc() = "Deterministic swarm simulator core";
  m.attr("PROTOCOL_VERSION") = kProtocolVersion;

  static py::exception<ReplayMismatch> replay_mismatch(m, "ReplayMismatch", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ReplayMismatch& e) {
      replay_mismatch(e.what());
    } catch (const ConfigError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const CodecError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const WorldError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("reference_mission_config", [](std::uint64_t seed) { return reference_mission_config(seed).dump(); },
        py::arg("seed") = 42);
  m.def("config_hash",
        [](const std::string& scenario_json, std::uint64_t seed) {
          return config_hash(parse_scenario(json::parse(scenario_json)), seed);
        },
        py::arg("scenario_json"), py::arg("seed"));
  m.def("run", &run, py::arg("scenario_json"), py::arg("seed"), py::arg("strategy") = py::none(),
        py::arg("duration") = py::none(), py::arg("stop_on_completion") = true);
  m.def("replay", &replay_log, py::arg("log_jsonl"), py::arg("scenario_json"), py::arg("seed"));
  m.def("expand_wall_points",
        [](std::pair<double, double> a, std::pair<double, double> b, double avoid_radius) {
          std::vector<std::pair<double, double>> out;
          for (const Vec2& p : expand_wall_points({a.first, a.second}, {b.first, b.second}, avoid_radius)) {
            out.emplace_back(p.x, p.y);
          }
          return out;
        },
        py::arg("a"), py::arg("b"), py::arg("avoid_radius"));

  py::class_<PyWorld>(m, "World")
      .def(py::init<const std::string&, std::uint64_t>(), py::arg("scenario_json"), py::arg("seed"))
      .def("step", &PyWorld::step, py::arg("commands_json") = "[]", py::arg("ticks") = 1)
      .def("snapshot", &PyWorld::snapshot)
      .def_property_readonly("tick", &PyWorld::tick);
}
