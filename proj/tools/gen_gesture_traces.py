#!/usr/bin/env python3
"""Writes the gesture trace corpus used by the FSM oracle tests.

Every trace lists hand frames plus the events expected after each frame.
Expected events are written down from the gesture rules directly (pinch at
2 cm with a 1.5x release band, closed hand at grab >= 0.99, menu above 0.8 /
below 0.6, 0.3 s touch debounce, resize factor = spread / initial spread,
fly vector = midpoint - starting midpoint); nothing here calls the C++ code.
"""
import json
import math
import pathlib
import sys

OUT = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "tests" / "traces")

DOWN = [0.0, 0.0, -1.0]
UP = [0.0, 0.0, 1.0]
DRAW_WALL_CENTER = [0.12, 0.0, 0.22]
UNDO_WALL_CENTER = [0.18, 0.0, 0.22]


def normal_with_up(c):
    """Unit palm normal whose z component (dot with up) is c."""
    s = math.sqrt(max(0.0, 1.0 - c * c))
    return [s, 0.0, c]


def hand(center, gap=0.08, grab=0.0, normal=DOWN, palm=None, index=None, thumb=None):
    """Tips straddle `center` along x, `gap` apart, unless given explicitly."""
    cx, cy, cz = center
    t = thumb if thumb is not None else [cx + gap / 2, cy, cz]
    i = index if index is not None else [cx - gap / 2, cy, cz]
    return {"palm": palm if palm is not None else [cx, cy, cz - 0.03], "normal": normal,
            "thumb": t, "index": i, "grab": grab}


def touch_hand(button_center, t_offset=0.05):
    # Index tip on the button, thumb well clear of it.
    x, y, z = button_center
    return hand([0, 0, 0], index=[x, y, z], thumb=[x + t_offset, y + 0.06, z])


def frame(t, left=None, right=None):
    return {"t": t, "left": left, "right": right}


def pinch_start(h, pos):
    return {"type": "PinchStart", "hand": h, "pos": pos}


def pinch_move(h, pos):
    return {"type": "PinchMove", "hand": h, "pos": pos}


def pinch_end(h, pos):
    return {"type": "PinchEnd", "hand": h, "pos": pos}


def scale(f):
    return {"type": "TwoHandPinchScale", "factor": f}


def fly(v):
    return {"type": "FlyVector", "v": v}


def touch(b):
    return {"type": "Touch", "button": b}


MENU_SHOWN = {"type": "MenuShown"}
MENU_HIDDEN = {"type": "MenuHidden"}


def target(robot):
    return {"kind": "target", "robot": robot}


traces = []


def trace(name, covers, frames, expected, graspables=None, dropped=None, avatar=None):
    traces.append({"name": name, "covers": covers, "frames": frames,
                   "expected": [{"frame": k, "events": v} for k, v in sorted(expected.items())],
                   "graspables": graspables or [], "dropped": dropped or [],
                   **({"final_avatar": avatar} if avatar else {})})


C = [0.3, 0.0, 0.1]   # right-hand workspace point
L = [-0.3, 0.0, 0.1]  # left-hand workspace point

# --- pinch hysteresis -------------------------------------------------------
trace("pinch_engage_release", "pinch hysteresis",
      [frame(0.0, right=hand(C, 0.05)), frame(0.1, right=hand(C, 0.019)),
       frame(0.2, right=hand(C, 0.025)), frame(0.3, right=hand(C, 0.031))],
      {1: [pinch_start("right", C)], 3: [pinch_end("right", C)]})

trace("pinch_band_edges", "pinch hysteresis",
      [frame(0.0, right=hand(C, 0.0199)), frame(0.1, right=hand(C, 0.0299)),
       frame(0.2, right=hand(C, 0.0301))],
      {0: [pinch_start("right", C)], 2: [pinch_end("right", C)]})

trace("pinch_never_engages_in_band", "pinch hysteresis",
      [frame(0.0, right=hand(C, 0.05)), frame(0.1, right=hand(C, 0.021)),
       frame(0.2, right=hand(C, 0.029)), frame(0.3, right=hand(C, 0.021))],
      {})

C2 = [C[0] + 0.01, C[1], C[2]]
trace("pinch_move_then_end", "pinch hysteresis",
      [frame(0.0, right=hand(C, 0.01)), frame(0.1, right=hand(C2, 0.01)),
       frame(0.2, right=hand(C2, 0.06))],
      {0: [pinch_start("right", C)], 1: [pinch_move("right", C2)], 2: [pinch_end("right", C2)]})

trace("closed_hand_is_not_a_pinch", "pinch hysteresis",
      [frame(0.0, right=hand(C, 0.0, grab=1.0)), frame(0.1, right=hand(C, 0.0, grab=0.3))],
      {1: [pinch_start("right", C)]})

trace("left_hand_pinch", "pinch hysteresis",
      [frame(0.0, left=hand(L, 0.015)), frame(0.1, left=hand(L, 0.04))],
      {0: [pinch_start("left", L)], 1: [pinch_end("left", L)]})

trace("pinch_ends_when_hand_lost", "pinch hysteresis",
      [frame(0.0, right=hand(C, 0.01)), frame(0.1)],
      {0: [pinch_start("right", C)], 1: [pinch_end("right", C)]})


# --- two-hand resize ---------------------------------------------------------
def spread(d, z=0.0):
    return [-d / 2, 0.0, z], [d / 2, 0.0, z]


l0, r0 = spread(0.2)
l1, r1 = spread(0.4)
trace("resize_double", "two-hand resize",
      [frame(0.0, hand(l0, 0.01), hand(r0, 0.01)), frame(0.1, hand(l1, 0.01), hand(r1, 0.01))],
      {0: [pinch_start("left", l0), pinch_start("right", r0)],
       1: [pinch_move("left", l1), pinch_move("right", r1), scale(2.0)]},
      # anchor is the midpoint (origin) so the avatar position is unchanged
      avatar={"position": [0.0, 0.0, 0.0], "world_scale": 2.0})

l0, r0 = spread(0.4)
l1, r1 = spread(0.2)
trace("resize_half", "two-hand resize",
      [frame(0.0, hand(l0, 0.01), hand(r0, 0.01)), frame(0.1, hand(l1, 0.01), hand(r1, 0.01))],
      {0: [pinch_start("left", l0), pinch_start("right", r0)],
       1: [pinch_move("left", l1), pinch_move("right", r1), scale(0.5)]},
      avatar={"position": [0.0, 0.0, 0.0], "world_scale": 0.5})

l0, r0 = spread(0.2)
l1, r1 = spread(0.3)
l2, r2 = spread(0.6)
# After the first resize the world scale is 1.5; pinch positions are reported
# in the world frame, so local / 1.5.
w = lambda p, s: [c / s for c in p]
trace("resize_factors_relative_to_start", "two-hand resize",
      [frame(0.0, hand(l0, 0.01), hand(r0, 0.01)), frame(0.1, hand(l1, 0.01), hand(r1, 0.01)),
       frame(0.2, hand(l2, 0.01), hand(r2, 0.01))],
      {0: [pinch_start("left", l0), pinch_start("right", r0)],
       1: [pinch_move("left", l1), pinch_move("right", r1), scale(1.5)],
       2: [pinch_move("left", w(l2, 1.5)), pinch_move("right", w(r2, 1.5)), scale(3.0)]},
      avatar={"position": [0.0, 0.0, 0.0], "world_scale": 3.0})

l0, r0 = spread(0.2)
l1 = [l0[0], 0.05, l0[2]]
r1 = [r0[0], 0.05, r0[2]]
trace("resize_translation_only_no_scale", "two-hand resize",
      [frame(0.0, hand(l0, 0.01), hand(r0, 0.01)), frame(0.1, hand(l1, 0.01), hand(r1, 0.01))],
      {0: [pinch_start("left", l0), pinch_start("right", r0)],
       1: [pinch_move("left", l1), pinch_move("right", r1)]},
      avatar={"position": [0.0, 0.0, 0.0], "world_scale": 1.0})

# Wall mode on: two-hand pinches draw, they do not resize.
l0, r0 = spread(0.2)
l1, r1 = spread(0.4)
trace("resize_gated_by_wall_mode", "two-hand resize",
      [frame(0.0, left=hand(L, normal=UP)),
       frame(0.1, left=hand(L, normal=UP), right=touch_hand(DRAW_WALL_CENTER)),
       frame(0.2, left=hand(L), right=hand(C)),
       frame(0.3, hand(l0, 0.01), hand(r0, 0.01)),
       frame(0.4, hand(l1, 0.01), hand(r1, 0.01))],
      {0: [MENU_SHOWN], 1: [touch("draw_wall")], 2: [MENU_HIDDEN],
       3: [pinch_start("left", l0), pinch_start("right", r0)],
       4: [pinch_move("left", l1), pinch_move("right", r1)]},
      avatar={"position": [0.0, 0.0, 0.0], "world_scale": 1.0, "wall_mode": True})

# --- fly -----------------------------------------------------------------------
def fist(palm):
    return hand(palm, 0.08, grab=1.0, palm=palm)


trace("fly_vector_from_start_midpoint", "fly baselines",
      [frame(0.0, fist([-0.1, 0, 0]), fist([0.1, 0, 0])),
       frame(0.1, fist([0.0, 0, 0]), fist([0.2, 0, 0]))],
      {0: [fly([0.0, 0.0, 0.0])], 1: [fly([0.1, 0.0, 0.0])]},
      # position += v * gain(2) * dt(0.1)
      avatar={"position": [0.02, 0.0, 0.0], "world_scale": 1.0})

trace("fly_baseline_resets_on_release", "fly baselines",
      [frame(0.0, fist([-0.1, 0, 0]), fist([0.1, 0, 0])),
       frame(0.1, fist([-0.1, 0, 0]), hand([0.1, 0, 0], 0.08, grab=0.5, palm=[0.1, 0, 0])),
       frame(0.2, fist([-0.1, 0.2, 0]), fist([0.1, 0.2, 0])),
       frame(0.3, fist([-0.1, 0.25, 0]), fist([0.1, 0.25, 0]))],
      {0: [fly([0.0, 0.0, 0.0])], 2: [fly([0.0, 0.0, 0.0])], 3: [fly([0.0, 0.05, 0.0])]})


def loose_fist(palm, g):
    return hand(palm, 0.08, grab=g, palm=palm)


trace("fly_closed_threshold", "fly baselines",
      [frame(0.0, loose_fist([-0.1, 0, 0], 0.98), loose_fist([0.1, 0, 0], 1.0)),
       frame(0.1, loose_fist([-0.1, 0, 0], 0.995), loose_fist([0.1, 0, 0], 0.995)),
       frame(0.2, loose_fist([-0.1, 0, 0.1], 0.99), loose_fist([0.1, 0, 0.1], 0.99))],
      {1: [fly([0.0, 0.0, 0.0])], 2: [fly([0.0, 0.0, 0.1])]})

trace("fly_needs_both_hands", "fly baselines",
      [frame(0.0, right=fist([0.1, 0, 0])), frame(0.1, right=fist([0.3, 0, 0]))],
      {})

# --- palm-up menu --------------------------------------------------------------
trace("menu_show_hide_hysteresis", "palm-up menu",
      [frame(0.0, left=hand(L, normal=normal_with_up(0.5))),
       frame(0.1, left=hand(L, normal=normal_with_up(0.85))),
       frame(0.2, left=hand(L, normal=normal_with_up(0.7))),
       frame(0.3, left=hand(L, normal=normal_with_up(0.65))),
       frame(0.4, left=hand(L, normal=normal_with_up(0.55))),
       frame(0.5, left=hand(L, normal=normal_with_up(0.75)))],
      {1: [MENU_SHOWN], 4: [MENU_HIDDEN]})

trace("menu_hides_when_left_hand_lost", "palm-up menu",
      [frame(0.0, left=hand(L, normal=UP)), frame(0.1, right=hand(C))],
      {0: [MENU_SHOWN], 1: [MENU_HIDDEN]})

trace("right_palm_up_shows_nothing", "palm-up menu",
      [frame(0.0, right=hand(C, normal=UP)), frame(0.1, right=hand(C, normal=UP))],
      {})

# --- touch --------------------------------------------------------------------
trace("touch_draw_wall_toggles_mode", "touch debounce",
      [frame(0.0, left=hand(L, normal=UP)),
       frame(0.1, left=hand(L, normal=UP), right=touch_hand(DRAW_WALL_CENTER))],
      {0: [MENU_SHOWN], 1: [touch("draw_wall")]},
      avatar={"position": [0.0, 0.0, 0.0], "world_scale": 1.0, "wall_mode": True})

trace("touch_debounce", "touch debounce",
      [frame(0.0, left=hand(L, normal=UP)),
       frame(0.1, left=hand(L, normal=UP), right=touch_hand(UNDO_WALL_CENTER)),
       frame(0.15, left=hand(L, normal=UP), right=hand(C)),
       frame(0.2, left=hand(L, normal=UP), right=touch_hand(UNDO_WALL_CENTER)),
       frame(0.3, left=hand(L, normal=UP), right=hand(C)),
       frame(0.45, left=hand(L, normal=UP), right=touch_hand(UNDO_WALL_CENTER))],
      {0: [MENU_SHOWN], 1: [touch("undo_wall")], 5: [touch("undo_wall")]})

trace("touch_held_fires_once", "touch debounce",
      [frame(0.0, left=hand(L, normal=UP))] +
      [frame(0.1 * k, left=hand(L, normal=UP), right=touch_hand(UNDO_WALL_CENTER)) for k in range(1, 11)],
      {0: [MENU_SHOWN], 1: [touch("undo_wall")]})

trace("touch_needs_menu", "touch debounce",
      [frame(0.0, left=hand(L), right=touch_hand(DRAW_WALL_CENTER)),
       frame(0.5, left=hand(L), right=hand(C)),
       frame(1.0, left=hand(L), right=touch_hand(DRAW_WALL_CENTER))],
      {})

trace("touch_outside_buttons", "touch debounce",
      [frame(0.0, left=hand(L, normal=UP)),
       frame(0.1, left=hand(L, normal=UP), right=touch_hand([0.12, 0.1, 0.22]))],
      {0: [MENU_SHOWN]})

# --- grasp ---------------------------------------------------------------------
BOX = {"object": target(3), "min": [0.45, -0.05, 0.0], "max": [0.55, 0.05, 0.1]}
G0 = [0.5, 0.0, 0.05]
G1 = [0.8, 0.3, 0.05]
trace("grasp_pick_and_release", "grasp",
      [frame(0.0, right=hand(G0, 0.03)), frame(0.1, right=hand(G1, 0.03)),
       frame(0.2, right=hand(G1, 0.06))],
      {0: [{"type": "GraspStart", "object": target(3)}],
       2: [{"type": "GraspEnd", "object": target(3), "release": G1}]},
      graspables=[BOX])

trace("grasp_beats_pinch", "grasp",
      [frame(0.0, right=hand(G0, 0.01)), frame(0.1, right=hand(G0, 0.035))],
      {0: [{"type": "GraspStart", "object": target(3)}],
       1: [{"type": "GraspEnd", "object": target(3), "release": G0}]},
      graspables=[BOX])

FAR = [0.8, 0.3, 0.05]
trace("grasp_rearms_after_leaving", "grasp",
      [frame(0.0, right=hand(G0, 0.03)), frame(0.1, right=hand(G0, 0.06)),
       frame(0.2, right=hand(G0, 0.03)), frame(0.3, right=hand(FAR, 0.06)),
       frame(0.4, right=hand(G0, 0.03))],
      {0: [{"type": "GraspStart", "object": target(3)}],
       1: [{"type": "GraspEnd", "object": target(3), "release": G0}],
       4: [{"type": "GraspStart", "object": target(3)}]},
      graspables=[BOX])

# --- robustness ----------------------------------------------------------------
trace("out_of_order_frame_dropped", "robustness",
      [frame(0.0, right=hand(C, 0.05)), frame(0.2, right=hand(C, 0.01)),
       frame(0.1, right=hand(C, 0.05)), frame(0.3, right=hand(C, 0.05))],
      {1: [pinch_start("right", C)], 3: [pinch_end("right", C)]}, dropped=[2])

bad = hand(C, 0.01)
bad["grab"] = 1.5
trace("invalid_grab_dropped", "robustness",
      [frame(0.0, right=hand(C, 0.05)), frame(0.1, right=bad), frame(0.2, right=hand(C, 0.05))],
      {}, dropped=[1])

OUT.mkdir(parents=True, exist_ok=True)
for old in OUT.glob("*.json"):
    old.unlink()
for k, t in enumerate(traces):
    (OUT / f"{k:02d}_{t['name']}.json").write_text(json.dumps(t, indent=1) + "\n")
print(f"wrote {len(traces)} traces to {OUT}")
