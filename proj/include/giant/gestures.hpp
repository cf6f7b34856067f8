#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "giant/geometry.hpp"

namespace giant {

enum class Hand { Left, Right };

// Landmarks of one tracked hand, in avatar-local meters (z up).
struct HandData {
  Vec3 palm_position;
  Vec3 palm_normal{0.0, 0.0, -1.0};
  Vec3 thumb_tip;
  Vec3 index_tip;
  double grab_strength = 0.0;
  bool operator==(const HandData&) const = default;
};

struct HandFrame {
  double timestamp = 0.0;
  std::optional<HandData> left;
  std::optional<HandData> right;

  const std::optional<HandData>& hand(Hand h) const { return h == Hand::Left ? left : right; }
  bool operator==(const HandFrame&) const = default;
};

struct ObjectRef {
  enum class Kind { RobotTarget, Cube };
  Kind kind = Kind::RobotTarget;
  int robot = -1;  // only for RobotTarget

  static ObjectRef target_of(int robot) { return {Kind::RobotTarget, robot}; }
  static ObjectRef cube() { return {Kind::Cube, -1}; }
  auto operator<=>(const ObjectRef&) const = default;
};

struct Box3 {
  Vec3 min;
  Vec3 max;
  bool contains(Vec3 p, double margin = 0.0) const {
    return p.x >= min.x - margin && p.x <= max.x + margin && p.y >= min.y - margin &&
           p.y <= max.y + margin && p.z >= min.z - margin && p.z <= max.z + margin;
  }
};

struct Graspable {
  ObjectRef object;
  Box3 bounds;  // world frame
};

struct Button {
  std::string id;
  Box3 bounds;  // avatar-local frame (the menu rides on the hand)
};

inline constexpr const char* kDrawWallButton = "draw_wall";
inline constexpr const char* kUndoWallButton = "undo_wall";

namespace event {
struct PinchStart {
  Hand hand;
  Vec3 pos;
  bool operator==(const PinchStart&) const = default;
};
struct PinchMove {
  Hand hand;
  Vec3 pos;
  bool operator==(const PinchMove&) const = default;
};
// Carries the last pinch position so a wall can be closed from it.
struct PinchEnd {
  Hand hand;
  Vec3 pos;
  bool operator==(const PinchEnd&) const = default;
};
struct TwoHandPinchScale {
  double factor = 1.0;
  bool operator==(const TwoHandPinchScale&) const = default;
};
struct FlyVector {
  Vec3 v;
  bool operator==(const FlyVector&) const = default;
};
struct GraspStart {
  ObjectRef object;
  bool operator==(const GraspStart&) const = default;
};
struct GraspEnd {
  ObjectRef object;
  Vec3 release;
  bool operator==(const GraspEnd&) const = default;
};
struct Touch {
  std::string button;
  bool operator==(const Touch&) const = default;
};
struct MenuShown {
  bool operator==(const MenuShown&) const = default;
};
struct MenuHidden {
  bool operator==(const MenuHidden&) const = default;
};
}  // namespace event

using InteractionEvent =
    std::variant<event::PinchStart, event::PinchMove, event::PinchEnd, event::TwoHandPinchScale,
                 event::FlyVector, event::GraspStart, event::GraspEnd, event::Touch,
                 event::MenuShown, event::MenuHidden>;

struct AvatarState {
  Vec3 position;
  double world_scale = 1.0;
  bool wall_mode = false;
  bool operator==(const AvatarState&) const = default;

  // Avatar-local point to world frame.
  Vec3 to_world(Vec3 local) const { return position + local / world_scale; }
};

struct GestureParams {
  double pinch_engage = 0.02;
  double pinch_release_factor = 1.5;
  double closed_threshold = 0.99;
  double grasp_margin = 0.005;
  double grasp_release_gap = 0.02;  // tip separation growth that ends a grasp
  double menu_show = 0.8;
  double menu_hide = 0.6;
  double touch_debounce = 0.3;
  double fly_gain = 2.0;
  double min_scale = 0.1;
  double max_scale = 100.0;
};

bool detect_pinch(const HandData& hand, bool latched, const GestureParams& params = {});
bool detect_closed(const HandData& hand, const GestureParams& params = {});

// Scales the world about `anchor` (avatar-local) so the anchor stays fixed in
// view. Throws std::invalid_argument when factor <= 0.
AvatarState apply_scale(const AvatarState& avatar, double factor, Vec3 anchor = {},
                        const GestureParams& params = {});

// Rising-edge touch detection with a per-button debounce.
class TouchDetector {
 public:
  explicit TouchDetector(double debounce = 0.3) : debounce_(debounce) {}
  std::optional<std::string> detect(double t, Vec3 index_tip, std::span<const Button> buttons);
  void reset_contacts() { inside_.clear(); }

 private:
  double debounce_;
  std::map<std::string, double> last_fire_;
  std::map<std::string, bool> inside_;
};

struct GestureUpdate {
  std::vector<InteractionEvent> events;
  AvatarState avatar;
  bool dropped = false;
  std::string drop_reason;
};

class GestureFsm {
 public:
  explicit GestureFsm(std::vector<Button> buttons = default_buttons(), GestureParams params = {});

  GestureUpdate update(const HandFrame& frame, std::span<const Graspable> graspables = {});

  const AvatarState& avatar() const { return avatar_; }
  void set_wall_mode(bool on) { avatar_.wall_mode = on; }
  bool resizing() const { return resize_.has_value(); }
  bool flying() const { return fly_origin_.has_value(); }
  bool menu_shown() const { return menu_shown_; }

  static std::vector<Button> default_buttons();

 private:
  struct HandLatch {
    bool pinching = false;
    Vec3 pinch_pos;  // world frame
    Vec3 pinch_local;
    std::optional<ObjectRef> grasped;
    double grasp_gap0 = 0.0;
    bool rearm = false;  // tips must leave all objects before the next grasp
    Vec3 grasp_pos;
  };
  struct Resize {
    double d0;
    double base_scale;
    Vec3 base_position;
    Vec3 anchor;
    double last_factor;
  };

  void update_hand(Hand h, const std::optional<HandData>& data, std::span<const Graspable> graspables,
                   std::vector<InteractionEvent>& out);

  std::vector<Button> buttons_;
  GestureParams params_;
  AvatarState avatar_;
  std::optional<double> last_time_;
  HandLatch latch_[2];
  std::optional<Resize> resize_;
  std::optional<Vec3> fly_origin_;
  bool menu_shown_ = false;
  TouchDetector touch_;
};

}  // namespace giant
