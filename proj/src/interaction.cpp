#include "giant/interaction.hpp"

namespace giant {

namespace {

constexpr double kMinWallLength = 1e-3;

// Floor projection of a 3D release position, clamped into the arena.
Vec2 to_floor(Vec3 p, const ArenaSpec& arena, double margin, bool& clamped) {
  const Vec2 raw{p.x, p.y};
  const Vec2 c = arena.clamp(raw, margin);
  clamped = !(c == raw);
  return c;
}

double robot_margin(const Snapshot& s, int robot) {
  const RobotView* r = s.robot(robot);
  return r != nullptr ? r->radius : 0.0;
}

}  // namespace

bool counts_as_interaction(const Command& c, const CountingRule& rule) {
  return std::holds_alternative<PlaceTarget>(c) || std::holds_alternative<DrawWall>(c) ||
         std::holds_alternative<UndoWall>(c) || std::holds_alternative<PlaceCube>(c) ||
         (rule.count_toggles && std::holds_alternative<ToggleWallMode>(c));
}

SessionState count_interaction(SessionState session, const Command& command) {
  if (counts_as_interaction(command, session.rule)) ++session.interaction_count;
  return session;
}

void record_command(SessionState& session, std::int64_t tick, const Command& command,
                    const CommandResult& result, int session_id) {
  if (result.accepted && counts_as_interaction(command, session.rule)) ++session.interaction_count;
  session.command_log.push_back(
      {tick, command, result.accepted, session.interaction_count, result.error, session_id});
}

EventOutcome apply_event(SessionState& session, const InteractionEvent& ev, const Snapshot& snapshot) {
  EventOutcome out;
  const ArenaSpec& arena = snapshot.arena;

  if (const auto* g = std::get_if<event::GraspStart>(&ev)) {
    if (session.held_object) return out;
    if (g->object.kind == ObjectRef::Kind::RobotTarget) {
      if (snapshot.robot(g->object.robot) == nullptr) {
        out.flags.emplace_back("unknown robot");
        return out;
      }
      out.commands.emplace_back(PickTarget{g->object.robot});
    } else {
      out.commands.emplace_back(PickCube{});
    }
    session.held_object = g->object;
    return out;
  }

  if (const auto* g = std::get_if<event::GraspEnd>(&ev)) {
    if (!session.held_object || !(*session.held_object == g->object)) return out;
    session.held_object.reset();
    bool clamped = false;
    if (g->object.kind == ObjectRef::Kind::RobotTarget) {
      const Vec2 pos = to_floor(g->release, arena, robot_margin(snapshot, g->object.robot), clamped);
      out.commands.emplace_back(PlaceTarget{g->object.robot, pos});
    } else {
      out.commands.emplace_back(PlaceCube{to_floor(g->release, arena, 0.0, clamped)});
    }
    if (clamped) out.flags.emplace_back("position clamped into arena");
    return out;
  }

  if (const auto* t = std::get_if<event::Touch>(&ev)) {
    if (t->button == kDrawWallButton) {
      session.wall_mode = !session.wall_mode;
      if (!session.wall_mode) {
        session.pending_wall_start.reset();
        session.pending_wall_hand.reset();
      }
      out.commands.emplace_back(ToggleWallMode{});
    } else if (t->button == kUndoWallButton) {
      out.commands.emplace_back(UndoWall{});
    }
    return out;
  }

  if (!session.wall_mode) return out;

  if (const auto* p = std::get_if<event::PinchStart>(&ev)) {
    if (session.pending_wall_start) return out;
    bool clamped = false;
    session.pending_wall_start = to_floor(p->pos, arena, 0.0, clamped);
    session.pending_wall_hand = p->hand;
    if (clamped) out.flags.emplace_back("position clamped into arena");
    return out;
  }

  if (const auto* p = std::get_if<event::PinchEnd>(&ev)) {
    if (!session.pending_wall_start || session.pending_wall_hand != p->hand) return out;
    bool clamped = false;
    const Vec2 a = *session.pending_wall_start;
    const Vec2 b = to_floor(p->pos, arena, 0.0, clamped);
    session.pending_wall_start.reset();
    session.pending_wall_hand.reset();
    if (distance(a, b) < kMinWallLength) {
      out.flags.emplace_back("degenerate wall discarded");
      return out;
    }
    out.commands.emplace_back(DrawWall{a, b});
    if (clamped) out.flags.emplace_back("position clamped into arena");
  }
  return out;
}

}  // namespace giant
