"""One-shot planning: place every wall in a single pass, then score the plan.

Two room-assignment modes are demonstrated. Identity-less matching hands out
rooms after all walls are placed, biggest region first, each taking the
remaining room whose desired area is closest. Identity-full picks carry a
room index up front and each wall claims its smallest unassigned adjacent
region the moment it is activated; a later wall may not be built inside a
claimed room, so identity-full placements peel chunks off the
entrance-connected bulk one at a time.

Renders land in demos/out/ as SVG (with room labels and the connection
graph) and PNG.

Run:  python3 demos/02_one_shot_planning.py
"""

from pathlib import Path

from laserwall import (
    AssignmentMode,
    CellCoord,
    Fixed,
    Pick,
    WallShape,
    ascii_render,
    compute_metrics,
    closeness,
    geometric_score,
    load_scenario,
    one_shot_plan,
    save_png,
    save_svg,
    topological_score,
)

OUT = Path(__file__).parent / "out"

SPOTS = [
    (WallShape.STRAIGHT_VERTICAL, CellCoord(13, 10)),
    (WallShape.STRAIGHT_HORIZONTAL, CellCoord(24, 17)),
    (WallShape.STRAIGHT_VERTICAL, CellCoord(22, 26)),
]


def report(state, scenario, title):
    metrics = compute_metrics(state, scenario)
    print(f"--- {title} ---")
    print(ascii_render(state))
    print("room  area  desired")
    for room in range(scenario.n_rooms):
        print(f"{room:4d}  {metrics.areas[room]:4d}  {scenario.desired_areas[room]:7d}")
    print(f"connections satisfied: {metrics.connections_satisfied}"
          f"/{metrics.connections_required}, entrance ok: {metrics.entrance_ok}")
    print(f"geometric {geometric_score(metrics, scenario):.3f}"
          f"  topological {topological_score(metrics):.3f}"
          f"  closeness {closeness(metrics, scenario):.3f}\n")


def main() -> None:
    OUT.mkdir(exist_ok=True)
    scenario = load_scenario(1)
    print(f"Scenario {scenario.id}: {scenario.grid_width}x{scenario.grid_height},"
          f" {scenario.n_rooms} rooms, desired areas {scenario.desired_areas},"
          f" entrance on the {scenario.entrance_facade.value} facade.\n")

    picks = [Pick(shape=s, pivot=p) for s, p in SPOTS]
    identityless = one_shot_plan(scenario, picks, AssignmentMode.IDENTITY_LESS,
                                 Fixed())
    report(identityless, scenario, "identity-less assignment")

    # Identity-full: every pick carries a room index. Each wall, in
    # placement order, claims the smallest unassigned region touching its
    # body, and no wall may be built inside a claimed room, so the picks
    # peel strips off the entrance-connected bulk: a top strip for room 3,
    # a bottom strip for room 2, then a vertical split whose east side
    # becomes room 1. The west remainder holds the entrance and is the
    # living room automatically.
    full_picks = [
        Pick(shape=WallShape.STRAIGHT_HORIZONTAL, pivot=CellCoord(18, 6),
             room_index=3),
        Pick(shape=WallShape.STRAIGHT_HORIZONTAL, pivot=CellCoord(18, 27),
             room_index=2),
        Pick(shape=WallShape.STRAIGHT_VERTICAL, pivot=CellCoord(19, 16),
             room_index=1),
    ]
    identityfull = one_shot_plan(scenario, full_picks,
                                 AssignmentMode.IDENTITY_FULL, Fixed())
    report(identityfull, scenario, "identity-full assignment (rooms 3, 2, 1)")

    save_svg(identityless, scenario, compute_metrics(identityless, scenario),
             OUT / "one_shot_identityless.svg")
    save_svg(identityfull, scenario, compute_metrics(identityfull, scenario),
             OUT / "one_shot_identityfull.svg")
    save_png(identityless, OUT / "one_shot_identityless.png")
    print(f"wrote {OUT / 'one_shot_identityless.svg'}")
    print(f"wrote {OUT / 'one_shot_identityfull.svg'}")
    print(f"wrote {OUT / 'one_shot_identityless.png'}")


if __name__ == "__main__":
    main()
