"""Episodic environment: dynamic planning as a Gym-style MDP.

An episode starts from a random identity-full wall configuration and ends when
the layout's closeness reaches the terminal threshold (terminated) or the step
budget runs out (truncated). Actions index (wall, transformation) pairs; the
action mask marks exactly the transformations that would not violate a hard
constraint. Observations are either an integer label grid with a structure
channel or an RGB raster whose palette decodes back to the labels exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .errors import (ConflictingAssignment, EpisodeFinished, IllegalPlacement,
                     OutOfBounds, ResetExhausted, ValidationError)
from .geometry import (ALL_SHAPES, ANGLED_SHAPES, ENTRANCE_OPENING, FREE,
                       STRAIGHT_SHAPES, WALL_BODY, BEAM_LIGHT, CellCoord,
                       LaserWall, PlanGrid, Transformation, TRANSFORMATIONS,
                       WallShape, instantiate_wall)
from .metrics import LayoutMetrics, closeness, compute_metrics
from .partition import (Decreasing, Fixed, InfiltrationMode, mode_from_dict,
                        mode_to_dict)
from .planning import (AssignmentMode, LayoutState, LightMode, StepOutcome,
                       dynamic_step, initial_state, transform_legality)
from .scenarios import DesignScenario, load_scenario

RESET_ATTEMPT_CAP = 10000


class WallTypes(str, Enum):
    STRAIGHT_ONLY = "straight"
    ANGLED_ONLY = "angled"
    BOTH = "both"

    @property
    def shapes(self) -> tuple[WallShape, ...]:
        if self is WallTypes.STRAIGHT_ONLY:
            return STRAIGHT_SHAPES
        if self is WallTypes.ANGLED_ONLY:
            return ANGLED_SHAPES
        return ALL_SHAPES


@dataclass(frozen=True)
class RewardSpec:
    violation_penalty: float = -5.0
    deviation_penalty_scale: float = -1.0
    terminal_fail_penalty: float = -50.0
    terminal_threshold: float = 0.8
    terminal_scale: float = 100.0
    adjacency_bonus: float = 20.0
    shaping: str = "linear"  # or "quadratic"

    def __post_init__(self):
        if not (0.0 < self.terminal_threshold <= 1.0):
            raise ValidationError("terminal_threshold must be in (0, 1]")
        if (self.violation_penalty > 0 or self.deviation_penalty_scale > 0
                or self.terminal_fail_penalty > 0):
            raise ValidationError("penalties must be <= 0")
        if self.terminal_scale < 0 or self.adjacency_bonus < 0:
            raise ValidationError("terminal_scale and adjacency_bonus must be >= 0")
        if self.shaping not in ("linear", "quadratic"):
            raise ValidationError("shaping must be linear or quadratic")

    def shaped(self, c: float) -> float:
        return c * c if self.shaping == "quadratic" else c

    @property
    def bounds(self) -> tuple[float, float]:
        """Provable per-step reward range."""
        return (self.violation_penalty + self.terminal_fail_penalty,
                self.terminal_scale + self.adjacency_bonus)


@dataclass(frozen=True)
class ObservationSpec:
    mode: str = "label_grid"  # or "rgb_image"
    cell_px: int = 4

    def __post_init__(self):
        if self.mode not in ("label_grid", "rgb_image"):
            raise ValidationError("observation mode must be label_grid or rgb_image")
        if self.cell_px < 1:
            raise ValidationError("cell_px must be >= 1")


@dataclass(frozen=True)
class EnvConfig:
    scenario: DesignScenario
    light_mode: LightMode = LightMode.OFF_LIGHT
    infiltration: InfiltrationMode = field(default_factory=Fixed)
    wall_types: WallTypes = WallTypes.BOTH
    max_steps: int = 200
    reward: RewardSpec = field(default_factory=RewardSpec)
    observation: ObservationSpec = field(default_factory=ObservationSpec)
    seed: int = 0

    def __post_init__(self):
        if self.max_steps < 1:
            raise ValidationError("max_steps must be >= 1")

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario.to_dict(),
            "light_mode": self.light_mode.value,
            "infiltration": mode_to_dict(self.infiltration),
            "wall_types": self.wall_types.value,
            "max_steps": self.max_steps,
            "reward": {
                "violation_penalty": self.reward.violation_penalty,
                "deviation_penalty_scale": self.reward.deviation_penalty_scale,
                "terminal_fail_penalty": self.reward.terminal_fail_penalty,
                "terminal_threshold": self.reward.terminal_threshold,
                "terminal_scale": self.reward.terminal_scale,
                "adjacency_bonus": self.reward.adjacency_bonus,
                "shaping": self.reward.shaping,
            },
            "observation": {"mode": self.observation.mode,
                            "cell_px": self.observation.cell_px},
            "seed": self.seed,
        }

    @staticmethod
    def from_dict(doc: dict) -> "EnvConfig":
        return EnvConfig(
            scenario=load_scenario(doc["scenario"]),
            light_mode=LightMode(doc.get("light_mode", "off")),
            infiltration=mode_from_dict(doc.get("infiltration", {"kind": "fixed"})),
            wall_types=WallTypes(doc.get("wall_types", "both")),
            max_steps=int(doc.get("max_steps", 200)),
            reward=RewardSpec(**doc.get("reward", {})),
            observation=ObservationSpec(**doc.get("observation", {})),
            seed=int(doc.get("seed", 0)),
        )


def make_env_config(scenario: Union[int, dict, DesignScenario] = 1,
                    light_mode: str = "off", infiltration: str = "fixed",
                    horizon: Optional[int] = None, wall_types: str = "both",
                    max_steps: int = 200, observation: str = "label_grid",
                    cell_px: int = 4, seed: Optional[int] = None,
                    reward: Optional[RewardSpec] = None) -> EnvConfig:
    """Convenience factory used by the CLI and the HTTP service."""
    sc = scenario if isinstance(scenario, DesignScenario) else load_scenario(scenario)
    if infiltration == "fixed":
        mode: InfiltrationMode = Fixed()
    elif infiltration == "decreasing":
        mode = Decreasing(horizon=horizon if horizon else sc.default_horizon)
    else:
        raise ValidationError("infiltration must be fixed or decreasing")
    return EnvConfig(
        scenario=sc, light_mode=LightMode(light_mode),
        infiltration=mode, wall_types=WallTypes(wall_types),
        max_steps=max_steps, reward=reward if reward else RewardSpec(),
        observation=ObservationSpec(mode=observation, cell_px=cell_px),
        seed=seed if seed is not None else sc.seed,
    )


# ---------------------------------------------------------------------------
# Observation encoding
# ---------------------------------------------------------------------------

STRUCTURE_FREE = 0
STRUCTURE_WALL = 1
STRUCTURE_BEAM = 2
STRUCTURE_ENTRANCE = 3

_STATE_TO_STRUCTURE = np.array([STRUCTURE_FREE, STRUCTURE_WALL, STRUCTURE_BEAM,
                                STRUCTURE_ENTRANCE], dtype=np.int32)


def label_grid_observation(state: LayoutState) -> np.ndarray:
    """(2, H, W) int32: channel 0 the per-cell room index (-1 unassigned),
    channel 1 the structure code (free/wall/beam/entrance)."""
    rooms = state.room_label_grid()
    structure = _STATE_TO_STRUCTURE[state.grid.state]
    return np.stack([rooms, structure]).astype(np.int32)


def _palette(room: np.ndarray, structure: np.ndarray) -> np.ndarray:
    """Injective (room, structure) -> RGB; room -1..9, structure 0..3."""
    idx = room + 1
    r = (20 + 22 * idx).astype(np.uint8)
    g = (235 - 18 * idx).astype(np.uint8)
    b = (30 + 55 * structure).astype(np.uint8)
    return np.stack([r, g, b], axis=-1)


def rgb_observation(state: LayoutState, cell_px: int) -> np.ndarray:
    """(H*px, W*px, 3) uint8 raster that decodes back to the label grid."""
    grid = label_grid_observation(state)
    img = _palette(grid[0], grid[1])
    if cell_px > 1:
        img = np.repeat(np.repeat(img, cell_px, axis=0), cell_px, axis=1)
    return img


def decode_rgb_observation(img: np.ndarray, cell_px: int = 1) -> np.ndarray:
    """Invert rgb_observation back to the (2, H, W) label grid."""
    sampled = img[::cell_px, ::cell_px, :].astype(np.int32)
    room = (sampled[..., 0] - 20) // 22 - 1
    structure = (sampled[..., 2] - 30) // 55
    return np.stack([room, structure])


# ---------------------------------------------------------------------------
# Environment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RewardBreakdown:
    violation: float = 0.0
    deviation: float = 0.0
    terminal: float = 0.0
    bonus: float = 0.0

    @property
    def total(self) -> float:
        return self.violation + self.deviation + self.terminal + self.bonus

    def to_dict(self) -> dict:
        return {"violation": self.violation, "deviation": self.deviation,
                "terminal": self.terminal, "bonus": self.bonus,
                "total": self.total}


class LayoutEnv:
    """Single-threaded episodic environment over dynamic planning."""

    def __init__(self, config: EnvConfig):
        self.config = config
        self.scenario = config.scenario
        self.n_walls = self.scenario.n_walls
        self.action_count = self.n_walls * len(TRANSFORMATIONS)
        self._state: Optional[LayoutState] = None
        self._steps = 0
        self._terminated = False
        self._truncated = True  # force reset before first step
        self._episode_seed: Optional[int] = None
        self._last_closeness = 0.0
        self._last_metrics: Optional[LayoutMetrics] = None
        self._last_breakdown: Optional[RewardBreakdown] = None

    # -- lifecycle ----------------------------------------------------------

    @property
    def state(self) -> LayoutState:
        if self._state is None:
            raise EpisodeFinished("reset the environment before reading state")
        return self._state

    @property
    def done(self) -> bool:
        return self._terminated or self._truncated

    @property
    def steps(self) -> int:
        return self._steps

    @property
    def episode_seed(self) -> Optional[int]:
        return self._episode_seed

    @property
    def terminated(self) -> bool:
        return self._terminated

    @property
    def truncated(self) -> bool:
        return self._truncated

    @property
    def last_breakdown(self) -> Optional["RewardBreakdown"]:
        return self._last_breakdown

    def reset(self, seed: Optional[int] = None) -> tuple[np.ndarray, dict]:
        """Sample an initial identity-full configuration with exactly
        n_rooms regions, every region assigned."""
        used = self.config.seed if seed is None else seed
        rng = np.random.default_rng(used)
        sc = self.scenario
        shapes = self.config.wall_types.shapes
        outline = PlanGrid(sc.grid_width, sc.grid_height, sc.entrance_facade)
        entrance = {(c.x, c.y) for c in outline.entrance}
        state: Optional[LayoutState] = None
        for _attempt in range(RESET_ATTEMPT_CAP):
            walls: list[LaserWall] = []
            taken: set[tuple[int, int]] = set()
            ok = True
            for i in range(self.n_walls):
                shape = shapes[int(rng.integers(len(shapes)))]
                pivot = CellCoord(int(rng.integers(sc.grid_width)),
                                  int(rng.integers(sc.grid_height)))
                try:
                    wall = instantiate_wall(shape, pivot, sc.segment_length,
                                            room_index=i + 1, wall_id=i,
                                            width=sc.grid_width,
                                            height=sc.grid_height)
                except OutOfBounds:
                    ok = False
                    break
                cells = {(c.x, c.y) for c in wall.body_cells()}
                if cells & taken or cells & entrance:
                    ok = False
                    break
                taken |= cells
                walls.append(wall)
            if not ok:
                continue
            try:
                candidate = initial_state(sc, walls, self.config.light_mode,
                                          self.config.infiltration)
            except (IllegalPlacement, ConflictingAssignment):
                continue
            if candidate.partition.n_regions != sc.n_rooms:
                continue
            if candidate.assignment.unassigned:
                continue
            state = candidate
            break
        if state is None:
            raise ResetExhausted(
                f"no legal initial configuration for scenario {sc.id} "
                f"within {RESET_ATTEMPT_CAP} attempts (seed {used})")
        self._state = state
        self._steps = 0
        self._episode_seed = used
        metrics = compute_metrics(state, sc)
        c = closeness(metrics, sc)
        self._last_metrics, self._last_closeness = metrics, c
        self._terminated = False
        self._truncated = False
        self._last_breakdown = None
        if self.n_walls == 0:
            # Degenerate single-room scenario: nothing to transform.
            if c >= self.config.reward.terminal_threshold:
                self._terminated = True
            else:
                self._truncated = True
        return self.observe(), self._info(outcome=None,
                                          breakdown=RewardBreakdown())

    def decode_action(self, action: int) -> tuple[int, Transformation]:
        if not (0 <= action < self.action_count):
            raise ValidationError(
                f"action {action} outside [0, {self.action_count})")
        return action // len(TRANSFORMATIONS), TRANSFORMATIONS[action % len(TRANSFORMATIONS)]

    def encode_action(self, wall_id: int, t: Transformation) -> int:
        return wall_id * len(TRANSFORMATIONS) + TRANSFORMATIONS.index(t)

    def step(self, action: int) -> tuple[np.ndarray, float, bool, bool, dict]:
        if self._state is None or self.done:
            raise EpisodeFinished("episode is finished; call reset()")
        wall_id, t = self.decode_action(int(action))
        new_state, outcome = dynamic_step(self._state, wall_id, t)
        self._steps += 1
        spec = self.config.reward
        terminated = False
        if outcome.ok:
            self._state = new_state
            metrics = compute_metrics(new_state, self.scenario)
            c = closeness(metrics, self.scenario)
            self._last_metrics, self._last_closeness = metrics, c
            deviation = spec.deviation_penalty_scale * (1.0 - c)
            breakdown = RewardBreakdown(deviation=deviation)
            if c >= spec.terminal_threshold:
                terminated = True
                bonus = (spec.adjacency_bonus
                         if (metrics.connections_satisfied
                             == metrics.connections_required
                             and metrics.entrance_ok) else 0.0)
                breakdown = RewardBreakdown(deviation=deviation,
                                            terminal=spec.terminal_scale * spec.shaped(c),
                                            bonus=bonus)
        else:
            breakdown = RewardBreakdown(violation=spec.violation_penalty)
        truncated = False
        if not terminated and self._steps >= self.config.max_steps:
            truncated = True
            if self._last_closeness < spec.terminal_threshold:
                breakdown = replace(breakdown,
                                    terminal=breakdown.terminal + spec.terminal_fail_penalty)
        self._terminated, self._truncated = terminated, truncated
        self._last_breakdown = breakdown
        info = self._info(outcome=outcome, breakdown=breakdown)
        return self.observe(), breakdown.total, terminated, truncated, info

    # -- introspection ------------------------------------------------------

    def observe(self) -> np.ndarray:
        if self.config.observation.mode == "rgb_image":
            return rgb_observation(self.state, self.config.observation.cell_px)
        return label_grid_observation(self.state)

    def structure_grid(self) -> np.ndarray:
        """H x W structure-code channel (free/wall/beam/entrance)."""
        return label_grid_observation(self.state)[1]

    def action_mask(self) -> np.ndarray:
        """Boolean legality per action index; masked-in actions never cause
        hard-constraint violations."""
        mask = np.zeros(self.action_count, dtype=bool)
        if self._state is None or self.done:
            return mask
        for wall in self._state.walls:
            base = wall.id * len(TRANSFORMATIONS)
            for k, t in enumerate(TRANSFORMATIONS):
                moved, _reason = transform_legality(self._state, wall.id, t)
                mask[base + k] = moved is not None
        return mask

    def peek_closeness(self, action: int) -> tuple[float, bool]:
        """One-step lookahead: closeness after the action on a cloned state;
        violations return the current closeness and ok=False."""
        wall_id, t = self.decode_action(int(action))
        new_state, outcome = dynamic_step(self.state, wall_id, t)
        if not outcome.ok:
            return self._last_closeness, False
        from .metrics import state_closeness
        return state_closeness(new_state, self.scenario), True

    def metrics(self) -> LayoutMetrics:
        if self._last_metrics is None:
            self._last_metrics = compute_metrics(self.state, self.scenario)
        return self._last_metrics

    @property
    def last_closeness(self) -> float:
        return self._last_closeness

    def _info(self, outcome: Optional[StepOutcome],
              breakdown: RewardBreakdown) -> dict:
        return {
            "action_mask": self.action_mask(),
            "closeness": self._last_closeness,
            "metrics": self._last_metrics,
            "steps": self._steps,
            "seed": self._episode_seed,
            "outcome": None if outcome is None or outcome.ok else outcome.reason,
            "reward_decomposition": breakdown.to_dict(),
        }

    def render(self, mode: str = "raster", **kwargs):
        from . import render as render_mod
        if mode == "raster":
            return render_mod.raster(self.state, **kwargs)
        if mode == "ascii":
            return render_mod.ascii_render(self.state)
        if mode == "svg":
            return render_mod.svg_document(self.state, self.scenario,
                                           self.metrics(), **kwargs)
        raise ValidationError(f"unknown render mode: {mode}")


# ---------------------------------------------------------------------------
# Trajectory logs
# ---------------------------------------------------------------------------


def save_trajectory(path: Union[str, Path], config: EnvConfig, seed: int,
                    records: Sequence[dict]) -> None:
    """Line-delimited log: a header with the config and seed, then one record
    per step (action, reward decomposition, closeness)."""
    path = Path(path)
    with path.open("w") as f:
        f.write(json.dumps({"kind": "header", "config": config.to_dict(),
                            "seed": seed}) + "\n")
        for rec in records:
            f.write(json.dumps({"kind": "step", **rec}) + "\n")


def load_trajectory(path: Union[str, Path]) -> tuple[EnvConfig, int, list[dict]]:
    path = Path(path)
    lines = [json.loads(line) for line in path.read_text().splitlines() if line.strip()]
    if not lines or lines[0].get("kind") != "header":
        raise ValidationError(f"{path} is not a trajectory log (missing header)")
    header = lines[0]
    steps = [rec for rec in lines[1:] if rec.get("kind") == "step"]
    return EnvConfig.from_dict(header["config"]), int(header["seed"]), steps


def replay_trajectory(config: EnvConfig, seed: int,
                      actions: Sequence[int]):
    """Deterministically re-run an episode, yielding the state after reset and
    after every action."""
    env = LayoutEnv(config)
    env.reset(seed=seed)
    yield env.state, env
    for a in actions:
        if env.done:
            break
        env.step(int(a))
        yield env.state, env
