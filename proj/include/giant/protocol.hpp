#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "giant/command.hpp"
#include "giant/gestures.hpp"
#include "giant/world.hpp"

namespace giant {

inline constexpr int kProtocolVersion = 1;

namespace wire {
struct Hello {
  int version = kProtocolVersion;
  std::string config_hash;
  bool operator==(const Hello&) const = default;
};
struct SnapshotMsg {
  Snapshot snapshot;
  bool operator==(const SnapshotMsg&) const = default;
};
struct EventMsg {
  InteractionEvent event;
  bool operator==(const EventMsg&) const = default;
};
struct CommandMsg {
  Command command;
  bool operator==(const CommandMsg&) const = default;
};
struct AckMsg {
  std::int64_t index = 0;  // per-session sequence number of the acked message
  bool accepted = true;
  int interaction_count = 0;
  std::string error;
  bool operator==(const AckMsg&) const = default;
};
struct MissionMsg {
  std::int64_t tick = 0;
  std::vector<int> counts;
  std::vector<int> demands;
  double dwell = 0.0;
  bool complete = false;
  std::optional<double> completion_time;
  int interaction_count = 0;
  bool operator==(const MissionMsg&) const = default;
};
struct ErrorMsg {
  std::string code;
  std::string text;
  bool operator==(const ErrorMsg&) const = default;
};
}  // namespace wire

using WireMessage = std::variant<wire::Hello, wire::SnapshotMsg, wire::EventMsg, wire::CommandMsg,
                                 wire::AckMsg, wire::MissionMsg, wire::ErrorMsg>;

// One JSON object per WebSocket text frame; `type` selects the variant.
std::string encode_message(const WireMessage& m);
// Throws CodecError on malformed input.
WireMessage decode_message(std::string_view text);

}  // namespace giant
