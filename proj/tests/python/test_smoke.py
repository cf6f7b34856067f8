import math
from pathlib import Path

import pytest

import giant_swarm as gs

SCENARIOS = Path(__file__).resolve().parents[2] / "scenarios"


def test_mission_file_matches_builtin():
    scenario = gs.load_scenario(SCENARIOS / "mission.json")
    assert scenario == gs.reference_mission_config(42)
    assert gs.config_hash(scenario, 42) == gs.config_hash(SCENARIOS / "mission.json", 42)
    assert gs.config_hash(scenario, 42) != gs.config_hash(scenario, 43)


def test_scripted_run_replays_identically():
    result = gs.run(SCENARIOS / "mission.json", 42, strategy="strategy2")
    assert result["metrics"]["completion_time"] is not None
    assert result["metrics"]["interaction_count"] > 0
    again = gs.replay(result["session_log"], SCENARIOS / "mission.json", 42)
    assert again["final_snapshot_hash"] == result["final_snapshot_hash"]
    assert again["metrics"] == result["metrics"]


def test_replay_with_other_seed_is_refused():
    result = gs.run(SCENARIOS / "demo.json", 7, duration=2.0)
    with pytest.raises(gs.ReplayMismatch):
        gs.replay(result["session_log"], SCENARIOS / "demo.json", 8)


def test_world_steps_and_applies_commands():
    world = gs.World(SCENARIOS / "demo.json", 7)
    results = world.step([{"type": "DrawWall", "a": [0.1, 0.1], "b": [0.4, 0.1]},
                          {"type": "PlaceTarget", "robot": 99, "pos": [0.2, 0.2]}], ticks=10)
    assert results[0]["accepted"] is True
    assert results[1]["accepted"] is False
    snap = world.snapshot()
    assert world.tick == 10
    assert snap["tick"] == 10
    assert len(snap["walls"]) == 1


def test_bad_input_raises_value_error():
    with pytest.raises(ValueError):
        gs.World({"arena": "wide"}, 1)
    world = gs.World(SCENARIOS / "demo.json", 7)
    with pytest.raises(ValueError):
        world.step([{"type": "Teleport"}])


def test_expand_wall_points_spacing():
    pts = gs.expand_wall_points((0.0, 0.0), (1.0, 0.0), 0.3)
    assert pts[0] == (0.0, 0.0) and pts[-1] == (1.0, 0.0)
    gaps = [math.dist(p, q) for p, q in zip(pts, pts[1:])]
    assert max(gaps) <= 0.3
