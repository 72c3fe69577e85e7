"""Design scenarios: room programs a layout is evaluated against.

A scenario document is JSON with fields id, n_rooms, desired_areas (index 0 is
the living room), entrance_facade, grid {width, height}, aspect_bounds, and
optional segment_length and seed. Six scenarios ship as versioned built-ins.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Union

from .errors import ParseError, ValidationError
from .geometry import Facade

BUILTIN_IDS = (1, 2, 3, 4, 5, 6)


@dataclass(frozen=True)
class DesignScenario:
    id: int
    n_rooms: int
    desired_areas: tuple[int, ...]
    entrance_facade: Facade
    grid_width: int
    grid_height: int
    aspect_bounds: tuple[float, float] = (1.0, 6.0)
    segment_length: int = 0  # 0 means: derive from the grid
    seed: int = 0

    def __post_init__(self):
        if self.n_rooms < 1:
            raise ValidationError("n_rooms must be >= 1")
        if len(self.desired_areas) != self.n_rooms:
            raise ValidationError(
                f"desired_areas has {len(self.desired_areas)} entries "
                f"for n_rooms={self.n_rooms}")
        if any(a <= 0 for a in self.desired_areas):
            raise ValidationError("desired areas must be positive")
        if self.grid_width < 4 or self.grid_height < 4:
            raise ValidationError("grid must be at least 4x4")
        if not (0 < self.aspect_bounds[0] <= self.aspect_bounds[1]):
            raise ValidationError("aspect_bounds must satisfy 0 < low <= high")
        if self.segment_length == 0:
            object.__setattr__(self, "segment_length",
                               math.ceil(min(self.grid_width, self.grid_height) / 8))
        if self.segment_length < 1:
            raise ValidationError("segment_length must be >= 1")

    @property
    def n_walls(self) -> int:
        return self.n_rooms - 1

    @property
    def connections_required(self) -> int:
        """Room-to-living adjacencies plus per-room facade access."""
        return (self.n_rooms - 1) + self.n_rooms

    @property
    def default_horizon(self) -> int:
        return max(self.grid_width, self.grid_height)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "n_rooms": self.n_rooms,
            "desired_areas": list(self.desired_areas),
            "entrance_facade": self.entrance_facade.value,
            "grid": {"width": self.grid_width, "height": self.grid_height},
            "aspect_bounds": list(self.aspect_bounds),
            "segment_length": self.segment_length,
            "seed": self.seed,
        }


def _scenario_from_doc(doc: dict) -> DesignScenario:
    try:
        facade = Facade(str(doc["entrance_facade"]).lower())
    except ValueError as e:
        raise ValidationError(f"unknown entrance facade: {doc.get('entrance_facade')}") from e
    except KeyError as e:
        raise ValidationError("missing field: entrance_facade") from e
    try:
        grid = doc["grid"]
        bounds = doc.get("aspect_bounds", [1, 6])
        return DesignScenario(
            id=int(doc["id"]),
            n_rooms=int(doc["n_rooms"]),
            desired_areas=tuple(int(a) for a in doc["desired_areas"]),
            entrance_facade=facade,
            grid_width=int(grid["width"]),
            grid_height=int(grid["height"]),
            aspect_bounds=(float(bounds[0]), float(bounds[1])),
            segment_length=int(doc.get("segment_length", 0)),
            seed=int(doc.get("seed", 0)),
        )
    except KeyError as e:
        raise ValidationError(f"missing field: {e.args[0]}") from e
    except (TypeError, ValueError) as e:
        raise ValidationError(f"bad field value: {e}") from e


def load_scenario(source: Union[int, str, Path, dict]) -> DesignScenario:
    """Load a scenario from a built-in id, a JSON file path, a JSON string,
    or an already-parsed document."""
    if isinstance(source, int):
        if source not in BUILTIN_IDS:
            raise ValidationError(f"no built-in scenario {source}; ids are 1..6")
        text = (resources.files("laserwall.data")
                / f"scenario_{source}.json").read_text()
        return _scenario_from_doc(json.loads(text))
    if isinstance(source, dict):
        return _scenario_from_doc(source)
    text = None
    path = Path(str(source))
    if path.suffix == ".json" or path.exists():
        try:
            text = path.read_text()
        except OSError as e:
            raise ParseError(f"cannot read scenario file {path}: {e}") from e
    else:
        text = str(source)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"scenario document is not valid JSON: "
                         f"line {e.lineno}, column {e.colno}: {e.msg}") from e
    if not isinstance(doc, dict):
        raise ParseError("scenario document must be a JSON object")
    return _scenario_from_doc(doc)


def builtin_scenarios() -> tuple[DesignScenario, ...]:
    return tuple(load_scenario(i) for i in BUILTIN_IDS)
