#include "giant/protocol.hpp"

#include "giant/codec.hpp"

namespace giant {

std::string encode_message(const WireMessage& m) {
  json j = std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, wire::Hello>) {
          return {{"type", "hello"}, {"version", v.version}, {"config_hash", v.config_hash}};
        } else if constexpr (std::is_same_v<T, wire::SnapshotMsg>) {
          return {{"type", "snapshot"}, {"snapshot", v.snapshot}};
        } else if constexpr (std::is_same_v<T, wire::EventMsg>) {
          return {{"type", "event"}, {"event", v.event}};
        } else if constexpr (std::is_same_v<T, wire::CommandMsg>) {
          return {{"type", "command"}, {"command", v.command}};
        } else if constexpr (std::is_same_v<T, wire::AckMsg>) {
          json a{{"type", "ack"},
                 {"index", v.index},
                 {"accepted", v.accepted},
                 {"interaction_count", v.interaction_count}};
          if (!v.error.empty()) a["error"] = v.error;
          return a;
        } else if constexpr (std::is_same_v<T, wire::MissionMsg>) {
          json a{{"type", "mission"},  {"tick", v.tick},         {"counts", v.counts},
                 {"demands", v.demands}, {"dwell", v.dwell},     {"complete", v.complete},
                 {"completion_time", nullptr}, {"interaction_count", v.interaction_count}};
          if (v.completion_time) a["completion_time"] = *v.completion_time;
          return a;
        } else {
          return {{"type", "error"}, {"code", v.code}, {"text", v.text}};
        }
      },
      m);
  return j.dump();
}

WireMessage decode_message(std::string_view text) {
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw CodecError("message must be a JSON object");
    const std::string type = j.at("type").get<std::string>();
    if (type == "hello") return wire::Hello{j.at("version").get<int>(), j.value("config_hash", std::string{})};
    if (type == "snapshot") return wire::SnapshotMsg{j.at("snapshot").get<Snapshot>()};
    if (type == "event") return wire::EventMsg{j.at("event").get<InteractionEvent>()};
    if (type == "command") return wire::CommandMsg{j.at("command").get<Command>()};
    if (type == "ack") {
      return wire::AckMsg{j.at("index").get<std::int64_t>(), j.at("accepted").get<bool>(),
                          j.at("interaction_count").get<int>(), j.value("error", std::string{})};
    }
    if (type == "mission") {
      wire::MissionMsg m;
      m.tick = j.at("tick").get<std::int64_t>();
      m.counts = j.at("counts").get<std::vector<int>>();
      m.demands = j.at("demands").get<std::vector<int>>();
      m.dwell = j.at("dwell").get<double>();
      m.complete = j.at("complete").get<bool>();
      if (!j.at("completion_time").is_null()) m.completion_time = j["completion_time"].get<double>();
      m.interaction_count = j.at("interaction_count").get<int>();
      return m;
    }
    if (type == "error") return wire::ErrorMsg{j.at("code").get<std::string>(), j.value("text", std::string{})};
    throw CodecError("unknown message type: " + type);
  } catch (const json::exception& e) {
    throw CodecError(e.what());
  }
}

}  // namespace giant
