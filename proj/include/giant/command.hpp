#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "giant/geometry.hpp"

namespace giant {

// Operator intents. They are applied by the world at tick boundaries in
// arrival order.
struct PlaceTarget {
  int robot = 0;
  Vec2 pos;
  bool operator==(const PlaceTarget&) const = default;
};
struct PickTarget {
  int robot = 0;
  bool operator==(const PickTarget&) const = default;
};
struct DrawWall {
  Vec2 a;
  Vec2 b;
  bool operator==(const DrawWall&) const = default;
};
struct UndoWall {
  bool operator==(const UndoWall&) const = default;
};
struct PlaceCube {
  Vec2 pos;
  bool operator==(const PlaceCube&) const = default;
};
struct PickCube {
  bool operator==(const PickCube&) const = default;
};
struct ToggleWallMode {
  bool operator==(const ToggleWallMode&) const = default;
};

using Command =
    std::variant<PlaceTarget, PickTarget, DrawWall, UndoWall, PlaceCube, PickCube, ToggleWallMode>;

std::string_view command_name(const Command& c);

struct CommandResult {
  bool accepted = true;
  std::string error;
};

}  // namespace giant
