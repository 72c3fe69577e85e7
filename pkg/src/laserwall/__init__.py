"""Grid-based space layout design with laser-walls.

A laser-wall is a hard base wall plus soft light beams emitted from its free
endpoints; walls and beams together partition a rectangular outline into
rooms. The package covers wall geometry and beam propagation, region
extraction and room assignment, one-shot and dynamic planning, layout quality
metrics, an episodic environment for search and reinforcement learning,
search agents, PPO training, rendering, and a CLI plus HTTP session service.
"""

from .errors import (
    ConflictingAssignment,
    DegenerateShape,
    DivergenceDetected,
    EpisodeFinished,
    GeometryError,
    IllegalPlacement,
    InsufficientRegions,
    LaserWallError,
    NoLegalAction,
    OutOfBounds,
    ParseError,
    RegionCountMismatch,
    ResetExhausted,
    UnknownWall,
    ValidationError,
)
from .geometry import (
    BEAM_LIGHT,
    ENTRANCE_OPENING,
    FREE,
    TRANSFORMATIONS,
    WALL_BODY,
    CellCoord,
    Direction,
    Facade,
    LaserWall,
    PlanGrid,
    Segment,
    Transformation,
    WallShape,
    apply_transform,
    entrance_cells,
    instantiate_wall,
    placement_legal,
)
from .partition import (
    Beam,
    Decreasing,
    Fixed,
    PartitionResult,
    RegionInfo,
    activate_wall,
    extract_partition,
    infiltration_rate,
    propagate_beam,
    repartition,
)
from .scenarios import BUILTIN_IDS, DesignScenario, builtin_scenarios, load_scenario
from .planning import (
    LIVING_ROOM,
    AssignmentMode,
    LayoutState,
    LightMode,
    Pick,
    RoomAssignment,
    StepOutcome,
    assign_identityfull,
    assign_identityless,
    dynamic_step,
    initial_state,
    one_shot_plan,
    reassign_rooms_iou,
    transform_legality,
)
from .metrics import (
    LayoutMetrics,
    closeness,
    compute_metrics,
    geometric_score,
    state_closeness,
    topological_score,
)
from .env import (
    EnvConfig,
    LayoutEnv,
    ObservationSpec,
    RewardBreakdown,
    RewardSpec,
    WallTypes,
    decode_rgb_observation,
    label_grid_observation,
    load_trajectory,
    make_env_config,
    replay_trajectory,
    rgb_observation,
    save_trajectory,
)
from .agents import (
    EvalSummary,
    HillClimbAgent,
    HillClimbConfig,
    RandomAgent,
    RandomConfig,
    SolveResult,
    evaluate,
    solve_hillclimb,
)
from .render import ascii_render, raster, save_png, save_svg, svg_document

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "LaserWallError", "GeometryError", "OutOfBounds", "DegenerateShape",
    "IllegalPlacement", "InsufficientRegions", "RegionCountMismatch",
    "ConflictingAssignment", "UnknownWall", "EpisodeFinished",
    "ResetExhausted", "NoLegalAction", "DivergenceDetected", "ParseError",
    "ValidationError",
    # geometry
    "CellCoord", "Direction", "Facade", "WallShape", "Transformation",
    "TRANSFORMATIONS", "Segment", "LaserWall", "PlanGrid", "entrance_cells",
    "instantiate_wall", "apply_transform", "placement_legal",
    "FREE", "WALL_BODY", "BEAM_LIGHT", "ENTRANCE_OPENING",
    # partitioning
    "Fixed", "Decreasing", "infiltration_rate", "Beam", "propagate_beam",
    "activate_wall", "RegionInfo", "PartitionResult", "extract_partition",
    "repartition",
    # scenarios
    "BUILTIN_IDS", "DesignScenario", "builtin_scenarios", "load_scenario",
    # planning
    "LIVING_ROOM", "LightMode", "AssignmentMode", "RoomAssignment",
    "LayoutState", "StepOutcome", "Pick", "assign_identityless",
    "assign_identityfull", "one_shot_plan", "initial_state",
    "transform_legality", "dynamic_step", "reassign_rooms_iou",
    # metrics
    "LayoutMetrics", "compute_metrics", "geometric_score",
    "topological_score", "closeness", "state_closeness",
    # environment
    "EnvConfig", "ObservationSpec", "RewardSpec", "RewardBreakdown",
    "WallTypes", "LayoutEnv", "make_env_config", "label_grid_observation",
    "rgb_observation", "decode_rgb_observation", "save_trajectory",
    "load_trajectory", "replay_trajectory",
    # agents
    "RandomConfig", "RandomAgent", "HillClimbConfig", "HillClimbAgent",
    "SolveResult", "solve_hillclimb", "EvalSummary", "evaluate",
    # rendering
    "raster", "save_png", "ascii_render", "svg_document", "save_svg",
]
