#include "giant/gestures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace giant {

namespace {

constexpr Vec3 kUp{0.0, 0.0, 1.0};

Vec3 midpoint(Vec3 a, Vec3 b) { return (a + b) * 0.5; }

bool valid_hand(const HandData& h) {
  if (!(h.grab_strength >= 0.0 && h.grab_strength <= 1.0)) return false;
  return std::abs(h.palm_normal.norm() - 1.0) <= 1e-6;
}

}  // namespace

bool detect_pinch(const HandData& hand, bool latched, const GestureParams& params) {
  const double gap = distance(hand.thumb_tip, hand.index_tip);
  const double threshold = latched ? params.pinch_engage * params.pinch_release_factor : params.pinch_engage;
  return gap <= threshold;
}

bool detect_closed(const HandData& hand, const GestureParams& params) {
  return hand.grab_strength >= params.closed_threshold;
}

AvatarState apply_scale(const AvatarState& avatar, double factor, Vec3 anchor, const GestureParams& params) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw std::invalid_argument("apply_scale: factor must be positive");
  }
  AvatarState out = avatar;
  out.world_scale = std::clamp(avatar.world_scale * factor, params.min_scale, params.max_scale);
  out.position = avatar.position + anchor / avatar.world_scale - anchor / out.world_scale;
  return out;
}

std::optional<std::string> TouchDetector::detect(double t, Vec3 index_tip, std::span<const Button> buttons) {
  std::optional<std::string> fired;
  for (const auto& b : buttons) {
    const bool inside = b.bounds.contains(index_tip);
    const bool was_inside = std::exchange(inside_[b.id], inside);
    if (!inside || was_inside || fired) continue;
    auto last = last_fire_.find(b.id);
    if (last != last_fire_.end() && t - last->second < debounce_) continue;
    last_fire_[b.id] = t;
    fired = b.id;
  }
  return fired;
}

std::vector<Button> GestureFsm::default_buttons() {
  // Hand-held menu floating above the left palm.
  return {
      {kDrawWallButton, {{0.10, -0.02, 0.20}, {0.14, 0.02, 0.24}}},
      {kUndoWallButton, {{0.16, -0.02, 0.20}, {0.20, 0.02, 0.24}}},
  };
}

GestureFsm::GestureFsm(std::vector<Button> buttons, GestureParams params)
    : buttons_(std::move(buttons)), params_(params), touch_(params.touch_debounce) {}

void GestureFsm::update_hand(Hand h, const std::optional<HandData>& data,
                             std::span<const Graspable> graspables, std::vector<InteractionEvent>& out) {
  HandLatch& latch = latch_[h == Hand::Left ? 0 : 1];
  if (!data) {
    if (latch.grasped) {
      out.emplace_back(event::GraspEnd{*latch.grasped, latch.grasp_pos});
      latch.grasped.reset();
    }
    if (latch.pinching) {
      out.emplace_back(event::PinchEnd{h, latch.pinch_pos});
      latch.pinching = false;
    }
    return;
  }

  const Vec3 thumb_w = avatar_.to_world(data->thumb_tip);
  const Vec3 index_w = avatar_.to_world(data->index_tip);
  const Vec3 mid_local = midpoint(data->thumb_tip, data->index_tip);
  const Vec3 mid_w = avatar_.to_world(mid_local);
  const double gap = distance(data->thumb_tip, data->index_tip);

  if (latch.grasped) {
    latch.grasp_pos = mid_w;
    if (gap > latch.grasp_gap0 + params_.grasp_release_gap) {
      out.emplace_back(event::GraspEnd{*latch.grasped, mid_w});
      latch.grasped.reset();
      latch.rearm = true;
    }
    return;
  }

  const Graspable* contact = nullptr;
  for (const auto& g : graspables) {
    if (g.bounds.contains(thumb_w, params_.grasp_margin) &&
        g.bounds.contains(index_w, params_.grasp_margin)) {
      contact = &g;
      break;
    }
  }
  if (latch.rearm) {
    if (contact != nullptr) return;
    latch.rearm = false;
  }
  if (contact != nullptr) {
    if (latch.pinching) {
      out.emplace_back(event::PinchEnd{h, latch.pinch_pos});
      latch.pinching = false;
    }
    out.emplace_back(event::GraspStart{contact->object});
    latch.grasped = contact->object;
    latch.grasp_gap0 = gap;
    latch.grasp_pos = mid_w;
    return;
  }

  const bool pinch = !detect_closed(*data, params_) && detect_pinch(*data, latch.pinching, params_);
  if (!latch.pinching && pinch) {
    out.emplace_back(event::PinchStart{h, mid_w});
    latch.pinching = true;
    latch.pinch_pos = mid_w;
    latch.pinch_local = mid_local;
  } else if (latch.pinching && !pinch) {
    out.emplace_back(event::PinchEnd{h, latch.pinch_pos});
    latch.pinching = false;
  } else if (latch.pinching && !(mid_local == latch.pinch_local)) {
    out.emplace_back(event::PinchMove{h, mid_w});
    latch.pinch_pos = mid_w;
    latch.pinch_local = mid_local;
  }
}

GestureUpdate GestureFsm::update(const HandFrame& frame, std::span<const Graspable> graspables) {
  GestureUpdate result;
  if (last_time_ && frame.timestamp < *last_time_) {
    result.avatar = avatar_;
    result.dropped = true;
    result.drop_reason = "out-of-order timestamp";
    return result;
  }
  if ((frame.left && !valid_hand(*frame.left)) || (frame.right && !valid_hand(*frame.right))) {
    result.avatar = avatar_;
    result.dropped = true;
    result.drop_reason = "invalid hand data";
    return result;
  }
  const double dt = last_time_ ? frame.timestamp - *last_time_ : 0.0;
  last_time_ = frame.timestamp;
  auto& events = result.events;

  update_hand(Hand::Left, frame.left, graspables, events);
  update_hand(Hand::Right, frame.right, graspables, events);

  // Two-hand resize (pinch drives walls instead while wall mode is on).
  const HandLatch& l = latch_[0];
  const HandLatch& r = latch_[1];
  if (l.pinching && r.pinching && !avatar_.wall_mode) {
    const double d = distance(l.pinch_local, r.pinch_local);
    if (!resize_) {
      if (d > 1e-9) {
        resize_ = Resize{d, avatar_.world_scale, avatar_.position, midpoint(l.pinch_local, r.pinch_local), 1.0};
      }
    } else {
      const double factor = d / resize_->d0;
      if (factor != resize_->last_factor && factor > 0.0) {
        events.emplace_back(event::TwoHandPinchScale{factor});
        const AvatarState base{resize_->base_position, resize_->base_scale, avatar_.wall_mode};
        avatar_ = apply_scale(base, factor, resize_->anchor, params_);
        resize_->last_factor = factor;
      }
    }
  } else {
    resize_.reset();
  }

  // Flying: both hands closed; direction relative to the starting midpoint.
  if (frame.left && frame.right && detect_closed(*frame.left, params_) &&
      detect_closed(*frame.right, params_)) {
    const Vec3 m = midpoint(frame.left->palm_position, frame.right->palm_position);
    if (!fly_origin_) {
      fly_origin_ = m;
      events.emplace_back(event::FlyVector{{}});
    } else {
      const Vec3 v = m - *fly_origin_;
      events.emplace_back(event::FlyVector{v});
      avatar_.position = avatar_.position + v * (params_.fly_gain * dt);
    }
  } else {
    fly_origin_.reset();
  }

  if (frame.left && !menu_shown_ && dot(frame.left->palm_normal, kUp) > params_.menu_show) {
    events.emplace_back(event::MenuShown{});
    menu_shown_ = true;
  } else if (menu_shown_ && (!frame.left || dot(frame.left->palm_normal, kUp) < params_.menu_hide)) {
    events.emplace_back(event::MenuHidden{});
    menu_shown_ = false;
    touch_.reset_contacts();
  }

  if (menu_shown_ && frame.right) {
    if (auto button = touch_.detect(frame.timestamp, frame.right->index_tip, buttons_)) {
      if (*button == kDrawWallButton) avatar_.wall_mode = !avatar_.wall_mode;
      events.emplace_back(event::Touch{*button});
    }
  }

  result.avatar = avatar_;
  return result;
}

}  // namespace giant
