#pragma once

// JSON encodings for every value that crosses a file or socket boundary.

#include <nlohmann/json.hpp>

#include "giant/command.hpp"
#include "giant/gestures.hpp"
#include "giant/interaction.hpp"
#include "giant/mission.hpp"
#include "giant/world.hpp"

namespace giant {

using json = nlohmann::json;

class CodecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void to_json(json& j, const Vec2& v);
void from_json(const json& j, Vec2& v);
void to_json(json& j, const Vec3& v);
void from_json(const json& j, Vec3& v);
void to_json(json& j, const Rect& r);
void from_json(const json& j, Rect& r);
void to_json(json& j, const ArenaSpec& a);
void from_json(const json& j, ArenaSpec& a);

void to_json(json& j, const Command& c);
void from_json(const json& j, Command& c);

void to_json(json& j, const ObjectRef& o);
void from_json(const json& j, ObjectRef& o);
void to_json(json& j, const InteractionEvent& e);
void from_json(const json& j, InteractionEvent& e);
void to_json(json& j, const HandData& h);
void from_json(const json& j, HandData& h);
void to_json(json& j, const HandFrame& f);
void from_json(const json& j, HandFrame& f);

void to_json(json& j, const Snapshot& s);
void from_json(const json& j, Snapshot& s);

void to_json(json& j, const Metrics& m);
void from_json(const json& j, Metrics& m);
void to_json(json& j, const LogEntry& e);
void from_json(const json& j, LogEntry& e);

std::string_view mode_name(Mode m);

// Canonical one-line encoding; used for hashing and line-delimited files.
std::string encode_snapshot(const Snapshot& s);
Snapshot decode_snapshot(std::string_view text);
std::uint64_t snapshot_hash(const Snapshot& s);

}  // namespace giant

namespace nlohmann {

template <>
struct adl_serializer<giant::Command> {
  static void to_json(json& j, const giant::Command& c) { giant::to_json(j, c); }
  static void from_json(const json& j, giant::Command& c) { giant::from_json(j, c); }
};

template <>
struct adl_serializer<giant::InteractionEvent> {
  static void to_json(json& j, const giant::InteractionEvent& e) { giant::to_json(j, e); }
  static void from_json(const json& j, giant::InteractionEvent& e) { giant::from_json(j, e); }
};

}  // namespace nlohmann
