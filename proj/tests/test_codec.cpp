#include <gtest/gtest.h>

#include "giant/codec.hpp"
#include "giant/protocol.hpp"
#include "giant/world.hpp"

using namespace giant;

namespace {

std::vector<Command> all_commands() {
  return {PlaceTarget{3, {1.0, 0.5}}, PickTarget{3}, DrawWall{{0.1, 0.2}, {0.3, 0.4}}, UndoWall{},
          PlaceCube{{0.7, 0.8}},      PickCube{},    ToggleWallMode{}};
}

std::vector<InteractionEvent> all_events() {
  return {event::PinchStart{Hand::Left, {0.1, 0.2, 0.3}},
          event::PinchMove{Hand::Right, {0.1, 0.2, 0.3}},
          event::PinchEnd{Hand::Right, {0.4, 0.5, 0.6}},
          event::TwoHandPinchScale{2.0},
          event::FlyVector{{0.1, 0.0, -0.1}},
          event::GraspStart{ObjectRef::target_of(7)},
          event::GraspEnd{ObjectRef::cube(), {1.0, 1.0, 0.0}},
          event::Touch{"draw_wall"},
          event::MenuShown{},
          event::MenuHidden{}};
}

}  // namespace

TEST(Codec, CommandsRoundTrip) {
  for (const auto& c : all_commands()) {
    const json j = c;
    EXPECT_EQ(j.get<Command>(), c) << j.dump();
    EXPECT_EQ(j.at("type").get<std::string>(), command_name(c));
  }
}

TEST(Codec, EventsRoundTrip) {
  for (const auto& e : all_events()) {
    const json j = e;
    EXPECT_EQ(j.get<InteractionEvent>(), e) << j.dump();
  }
}

TEST(Codec, HandFrameRoundTrip) {
  HandData h{{0.1, 0.2, 0.3}, {0.0, 0.0, 1.0}, {0.01, 0.0, 0.0}, {0.0, 0.01, 0.0}, 0.5};
  HandFrame f{1.25, h, std::nullopt};
  EXPECT_EQ(json(f).get<HandFrame>(), f);
}

TEST(Codec, MalformedCommandThrows) {
  EXPECT_THROW(json::parse(R"({"type":"Teleport"})").get<Command>(), CodecError);
  EXPECT_THROW(json::parse(R"({"type":"PlaceTarget","robot":1})").get<Command>(), CodecError);
  EXPECT_THROW(json::parse(R"({"type":"PlaceTarget","robot":1,"pos":[1]})").get<Command>(), CodecError);
}

TEST(Codec, SnapshotRoundTripAndHash) {
  WorldConfig c;
  c.arena = {2, 2, {}};
  c.regions.push_back({1, "r", {{0, 0}, {1, 1}}});
  World w(c);
  w.spawn_robot({{0.5, 0.5}, 0.1});
  w.spawn_robot({{1.5, 1.5}, -2.0});
  w.add_wall({0.2, 1.0}, {0.8, 1.0});
  w.step(std::vector<Command>{PlaceTarget{1, {1.2, 0.3}}, PlaceCube{{1.0, 1.0}}});
  const Snapshot s = w.snapshot();
  const std::string text = encode_snapshot(s);
  EXPECT_EQ(decode_snapshot(text), s);
  EXPECT_EQ(encode_snapshot(decode_snapshot(text)), text);
  EXPECT_EQ(snapshot_hash(s), snapshot_hash(decode_snapshot(text)));
  w.step();
  EXPECT_NE(snapshot_hash(w.snapshot()), snapshot_hash(s));
}

TEST(Codec, MetricsRoundTrip) {
  Metrics m{123.5, 7, {{"PlaceTarget", 5}, {"DrawWall", 2}}};
  EXPECT_EQ(json(m).get<Metrics>(), m);
  Metrics none{std::nullopt, 0, {}};
  const json j = none;
  EXPECT_TRUE(j.at("completion_time").is_null());
  EXPECT_EQ(j.get<Metrics>(), none);
}

TEST(Protocol, MessagesRoundTrip) {
  WorldConfig c;
  World w(c);
  w.spawn_robot({{0.3, 0.3}, 0.0});
  const std::vector<WireMessage> msgs{
      wire::Hello{1, "00ff"},
      wire::SnapshotMsg{w.snapshot()},
      wire::EventMsg{event::Touch{"undo_wall"}},
      wire::CommandMsg{DrawWall{{0, 0}, {0.5, 0.5}}},
      wire::AckMsg{4, false, 2, "degenerate wall segment"},
      wire::MissionMsg{100, {1, 2, 3}, {25, 15, 10}, 1.5, false, std::nullopt, 9},
      wire::MissionMsg{100, {25, 15, 10}, {25, 15, 10}, 5.0, true, 300.0, 9},
      wire::ErrorMsg{"malformed", "bad"},
  };
  for (const auto& m : msgs) EXPECT_EQ(decode_message(encode_message(m)), m) << encode_message(m);
}

TEST(Protocol, MalformedMessagesThrow) {
  EXPECT_THROW(decode_message("not json"), CodecError);
  EXPECT_THROW(decode_message(R"({"type":"unknown"})"), CodecError);
  EXPECT_THROW(decode_message(R"({"no_type":1})"), CodecError);
  EXPECT_THROW(decode_message(R"({"type":"command","command":{"type":"Nope"}})"), CodecError);
  EXPECT_THROW(decode_message(R"([1,2,3])"), CodecError);
}

TEST(Protocol, TypeTags) {
  EXPECT_EQ(json::parse(encode_message(wire::Hello{})).at("type"), "hello");
  EXPECT_EQ(json::parse(encode_message(wire::AckMsg{})).at("type"), "ack");
  EXPECT_EQ(json::parse(encode_message(wire::CommandMsg{UndoWall{}})).at("type"), "command");
}
