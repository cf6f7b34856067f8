"""Deterministic 2D swarm simulator with a scripted operator."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional, Union

from . import _giant
from ._giant import PROTOCOL_VERSION, ReplayMismatch, expand_wall_points

__all__ = [
    "PROTOCOL_VERSION",
    "ReplayMismatch",
    "World",
    "config_hash",
    "expand_wall_points",
    "load_scenario",
    "reference_mission_config",
    "replay",
    "run",
]

ScenarioLike = Union[str, Path, dict]


def load_scenario(path: Union[str, Path]) -> dict:
    """Read a scenario file as a dict."""
    return json.loads(Path(path).read_text())


def _scenario_text(scenario: ScenarioLike) -> str:
    if isinstance(scenario, dict):
        return json.dumps(scenario)
    return Path(scenario).read_text()


def reference_mission_config(seed: int = 42) -> dict:
    """The 50-robot, three-room task allocation mission."""
    return json.loads(_giant.reference_mission_config(seed))


def config_hash(scenario: ScenarioLike, seed: int) -> str:
    return _giant.config_hash(_scenario_text(scenario), seed)


def run(
    scenario: ScenarioLike,
    seed: int,
    strategy: Optional[str] = None,
    duration: Optional[float] = None,
    stop_on_completion: bool = True,
) -> dict:
    """Headless run, optionally driven by the scripted operator.

    Returns metrics, the final snapshot and its hash, and the session log as
    line-delimited JSON text.
    """
    return json.loads(_giant.run(_scenario_text(scenario), seed, strategy, duration, stop_on_completion))


def replay(session_log: str, scenario: ScenarioLike, seed: int) -> dict:
    """Re-execute a session log. Raises ReplayMismatch for a different config."""
    return json.loads(_giant.replay(session_log, _scenario_text(scenario), seed))


class World:
    """Step-by-step access to a world built from a scenario."""

    def __init__(self, scenario: ScenarioLike, seed: int):
        self._world = _giant.World(_scenario_text(scenario), seed)

    @property
    def tick(self) -> int:
        return self._world.tick

    def step(self, commands: Optional[list[dict[str, Any]]] = None, ticks: int = 1) -> list[dict]:
        """Apply commands at this tick boundary, then advance `ticks` ticks."""
        return json.loads(self._world.step(json.dumps(commands or []), ticks))

    def snapshot(self) -> dict:
        return json.loads(self._world.snapshot())
