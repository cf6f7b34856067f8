#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "giant/command.hpp"
#include "giant/gestures.hpp"
#include "giant/world.hpp"

namespace giant {

// Which accepted commands count toward the interaction total.
struct CountingRule {
  bool count_toggles = false;
};

bool counts_as_interaction(const Command& c, const CountingRule& rule = {});

struct LogEntry {
  std::int64_t tick = 0;
  Command command;
  bool accepted = true;
  int interaction_count = 0;
  std::string error;
  int session = 0;
};

struct SessionState {
  bool wall_mode = false;
  std::optional<ObjectRef> held_object;
  std::optional<Vec2> pending_wall_start;
  std::optional<Hand> pending_wall_hand;
  int interaction_count = 0;
  std::vector<LogEntry> command_log;
  CountingRule rule;
};

struct EventOutcome {
  std::vector<Command> commands;
  std::vector<std::string> flags;  // e.g. "target clamped", "degenerate wall discarded"
};

// Maps one interaction event to commands. Session-level state (wall mode,
// held object, pending wall start) is updated immediately.
EventOutcome apply_event(SessionState& session, const InteractionEvent& event, const Snapshot& snapshot);

// Increments the interaction count when the accepted command counts.
SessionState count_interaction(SessionState session, const Command& command);

// Records a command outcome: counts it when accepted and appends it to the log.
void record_command(SessionState& session, std::int64_t tick, const Command& command,
                    const CommandResult& result, int session_id = 0);

}  // namespace giant
