"""Command-line entry points: plan, train, eval, render, serve, scenarios, plot.

Every subcommand exits nonzero with a single-line diagnostic on bad flags or
file errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import LaserWallError


def _add_env_flags(p: argparse.ArgumentParser, *, scenario_default: str = "1") -> None:
    p.add_argument("--scenario", default=scenario_default,
                   help="built-in id 1..6, a range like 1..6, or a JSON file")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--light-mode", choices=["on", "off"], default="off")
    p.add_argument("--infiltration", choices=["fixed", "decreasing"],
                   default="fixed")
    p.add_argument("--horizon", type=int, default=None,
                   help="decreasing-mode horizon (default max grid side)")
    p.add_argument("--walls", choices=["straight", "angled", "both"],
                   default="both")
    p.add_argument("--max-steps", type=int, default=200)


def _scenario_ids(text: str) -> list:
    """'1' -> [1]; '1..6' -> [1,...,6]; otherwise treat as a file path."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    try:
        return [int(text)]
    except ValueError:
        return [Path(text)]


def _make_config(args, scenario):
    from .env import make_env_config
    return make_env_config(
        scenario=scenario, light_mode=args.light_mode,
        infiltration=args.infiltration, horizon=args.horizon,
        wall_types=args.walls, max_steps=args.max_steps, seed=args.seed)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="laserwall",
        description="Grid-based space layout planning with laser-walls.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scenarios", help="list the built-in design scenarios")

    p = sub.add_parser("plan", help="one-shot planning from a picks file")
    _add_env_flags(p)
    p.add_argument("--picks", required=True, help="JSON picks file")
    p.add_argument("--assignment", choices=["identityless", "identityfull"],
                   default=None, help="default: identityfull when picks carry "
                   "room indices, identityless otherwise")
    p.add_argument("--out", default=None, help="output SVG path")

    p = sub.add_parser("eval", help="evaluate an agent over seeded episodes")
    _add_env_flags(p)
    p.add_argument("--agent", choices=["random", "hillclimb", "ppo"],
                   default="hillclimb")
    p.add_argument("--episodes", type=int, default=20)
    p.add_argument("--checkpoint", default=None,
                   help="policy checkpoint (required for --agent ppo)")
    p.add_argument("--out", default=None, help="write the summary JSON here")

    p = sub.add_parser("train", help="train an agent")
    _add_env_flags(p)
    p.add_argument("--agent", choices=["ppo", "hillclimb"], default="ppo")
    p.add_argument("--iterations", type=int, default=50)
    p.add_argument("--batch-episodes", type=int, default=8)
    p.add_argument("--learning-rate", type=float, default=3e-4)
    p.add_argument("--restarts", type=int, default=500,
                   help="hillclimb restart budget")
    p.add_argument("--out", default=None,
                   help="checkpoint path (ppo) or solution JSON (hillclimb)")
    p.add_argument("--report", default=None, help="training report JSON path")

    p = sub.add_parser("render", help="render a trajectory log to PNG/SVG frames")
    p.add_argument("--trajectory", required=True, help="JSONL trajectory file")
    p.add_argument("--out", default="frames", help="output directory")
    p.add_argument("--format", choices=["png", "svg", "both"], default="png")
    p.add_argument("--cell-px", type=int, default=12)

    p = sub.add_parser("serve", help="start the HTTP session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int,
                   default=int(os.environ.get("PORT", "8123")))
    p.add_argument("--snapshot", default=None,
                   help="persist sessions to this file on shutdown")

    p = sub.add_parser("plot", help="plot a training report")
    p.add_argument("--report", required=True, help="training report JSON")
    p.add_argument("--out", default="training.png")
    return parser


def _cmd_scenarios(args) -> int:
    from .scenarios import builtin_scenarios
    header = f"{'id':>2}  {'rooms':>5}  {'grid':>7}  {'facade':>6}  areas"
    print(header)
    for sc in builtin_scenarios():
        grid = f"{sc.grid_width}x{sc.grid_height}"
        print(f"{sc.id:>2}  {sc.n_rooms:>5}  {grid:>7}  "
              f"{sc.entrance_facade.value:>6}  {list(sc.desired_areas)}")
    return 0


def _load_picks(path: Path) -> list:
    from .geometry import CellCoord, WallShape
    from .planning import Pick
    doc = json.loads(path.read_text())
    picks = []
    for entry in doc:
        picks.append(Pick(
            shape=WallShape(entry["shape"]),
            pivot=CellCoord(int(entry["pivot"][0]), int(entry["pivot"][1])),
            room_index=entry.get("room_index")))
    return picks


def _cmd_plan(args) -> int:
    from .metrics import compute_metrics, closeness
    from .planning import AssignmentMode, LightMode, one_shot_plan
    from .partition import Fixed, Decreasing
    from .render import save_svg
    from .scenarios import load_scenario

    scenario = load_scenario(_scenario_ids(args.scenario)[0])
    picks = _load_picks(Path(args.picks))
    if args.assignment is None:
        identityfull = all(p.room_index is not None for p in picks)
    else:
        identityfull = args.assignment == "identityfull"
    mode = (AssignmentMode.IDENTITY_FULL if identityfull
            else AssignmentMode.IDENTITY_LESS)
    infiltration = (Fixed() if args.infiltration == "fixed"
                    else Decreasing(args.horizon or scenario.default_horizon))
    state = one_shot_plan(scenario, picks, mode, infiltration,
                          light_mode=LightMode(args.light_mode))
    metrics = compute_metrics(state, scenario)
    c = closeness(metrics, scenario)
    print(json.dumps({"closeness": round(c, 4), **metrics.to_dict()}, indent=2))
    out = Path(args.out) if args.out else Path(f"scenario_{scenario.id}_plan.svg")
    save_svg(state, scenario, metrics, out)
    print(f"wrote {out}")
    return 0


def _make_agent(args, config):
    from .agents import HillClimbAgent, HillClimbConfig, RandomAgent, RandomConfig
    if args.agent == "random":
        return RandomAgent(RandomConfig(seed=args.seed or 0))
    if args.agent == "hillclimb":
        return HillClimbAgent(HillClimbConfig(seed=args.seed or 0))
    if not args.checkpoint:
        raise LaserWallError("--agent ppo requires --checkpoint")
    from .ppo import PPOAgent, load_checkpoint
    net, _ppo, _cfg = load_checkpoint(args.checkpoint)
    return PPOAgent(net, config.scenario.n_rooms)


def _cmd_eval(args) -> int:
    from .agents import evaluate
    from .scenarios import load_scenario

    rows = []
    for sid in _scenario_ids(args.scenario):
        scenario = load_scenario(sid)
        config = _make_config(args, scenario)
        agent = _make_agent(args, config)
        summary = evaluate(agent, config, episodes=args.episodes,
                           seed=args.seed)
        rows.append((scenario, summary))

    total_required = sum(sc.connections_required for sc, _ in rows)
    total_satisfied = sum(sc.connections_required - s.mean_missed_connections
                          for sc, s in rows)
    print(f"{'scenario':>8}  {'episodes':>8}  {'success':>7}  "
          f"{'reward':>8}  {'connections':>11}")
    for sc, s in rows:
        satisfied = sc.connections_required - s.mean_missed_connections
        conn = f"{satisfied:.1f}/{sc.connections_required}"
        print(f"{sc.id:>8}  {s.episodes:>8}  {s.success_rate:>7.2f}  "
              f"{s.mean_reward:>8.2f}  {conn:>11}")
    if len(rows) > 1:
        print(f"{'total':>8}  {'':>8}  {'':>7}  {'':>8}  "
              f"{total_satisfied:>7.1f}/{total_required}")
    if args.out:
        doc = [{"scenario": sc.id, **s.to_dict()} for sc, s in rows]
        Path(args.out).write_text(json.dumps(doc, indent=2) + "\n")
        print(f"wrote {args.out}")
    return 0


def _cmd_train(args) -> int:
    from .scenarios import load_scenario
    scenario = load_scenario(_scenario_ids(args.scenario)[0])
    config = _make_config(args, scenario)

    if args.agent == "hillclimb":
        from .agents import HillClimbAgent, HillClimbConfig, solve_hillclimb
        hc = HillClimbConfig(restarts=args.restarts, seed=args.seed or 0)
        result = solve_hillclimb(config, hc)
        print(json.dumps(result.to_dict(), indent=2))
        if args.out:
            Path(args.out).write_text(json.dumps(result.to_dict(), indent=2) + "\n")
            print(f"wrote {args.out}")
        return 0 if result.success else 1

    from .ppo import PPOConfig, train
    ppo = PPOConfig(batch_episodes=args.batch_episodes,
                    learning_rate=args.learning_rate, seed=args.seed or 0)
    report = train(ppo, config, iterations=args.iterations,
                   checkpoint_path=args.out, report_path=args.report)
    for row in report.rows:
        print(f"iter {row['iteration']:>3}  reward {row['mean_reward']:>8.2f}  "
              f"length {row['mean_length']:>6.1f}  "
              f"closeness {row['mean_closeness']:.3f}")
    if args.out:
        print(f"wrote {args.out}")
    if args.report:
        print(f"wrote {args.report}")
    return 0


def _cmd_render(args) -> int:
    from .env import load_trajectory, replay_trajectory
    from .render import save_png, save_svg
    from .metrics import compute_metrics

    config, seed, records = load_trajectory(Path(args.trajectory))
    actions = [rec["action"] for rec in records]
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    count = 0
    for frame, (state, _env) in enumerate(replay_trajectory(config, seed, actions)):
        if args.format in ("png", "both"):
            save_png(state, out_dir / f"frame_{frame:04d}.png",
                     cell_px=args.cell_px)
        if args.format in ("svg", "both"):
            metrics = compute_metrics(state, config.scenario)
            save_svg(state, config.scenario, metrics,
                     out_dir / f"frame_{frame:04d}.svg")
        count += 1
    print(f"wrote {count} frame(s) to {out_dir}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn
    from .service import create_app
    app = create_app(snapshot_path=args.snapshot)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def _cmd_plot(args) -> int:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from .ppo import TrainReport

    report = TrainReport.load(Path(args.report))
    iterations = [r["iteration"] for r in report.rows]
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.2))
    for ax, key, label in zip(
            axes, ["mean_reward", "mean_length", "mean_closeness"],
            ["mean episode reward", "mean episode length", "mean closeness"]):
        ax.plot(iterations, [r[key] for r in report.rows])
        ax.set_xlabel("iteration")
        ax.set_title(label)
        ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(args.out, dpi=120)
    print(f"wrote {args.out}")
    return 0


_COMMANDS = {
    "scenarios": _cmd_scenarios,
    "plan": _cmd_plan,
    "eval": _cmd_eval,
    "train": _cmd_train,
    "render": _cmd_render,
    "serve": _cmd_serve,
    "plot": _cmd_plot,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except LaserWallError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
