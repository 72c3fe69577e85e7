"""Command-line interface: every subcommand short of the blocking server."""

import json

import pytest

from laserwall import LayoutEnv, make_env_config, save_trajectory
from laserwall.cli import main

PICKS = [
    {"shape": "straight_vertical", "pivot": [13, 10]},
    {"shape": "straight_horizontal", "pivot": [24, 17]},
    {"shape": "straight_vertical", "pivot": [22, 26]},
]


def write_picks(tmp_path, picks=None):
    path = tmp_path / "picks.json"
    path.write_text(json.dumps(picks if picks is not None else PICKS))
    return path


class TestScenariosCommand:
    def test_lists_all_six(self, capsys):
        assert main(["scenarios"]) == 0
        out = capsys.readouterr().out
        lines = [ln for ln in out.splitlines() if ln.strip()]
        assert len(lines) == 7
        assert lines[0].split()[:2] == ["id", "rooms"]
        assert [ln.split()[0] for ln in lines[1:]] == ["1", "2", "3", "4", "5", "6"]


class TestPlanCommand:
    def test_writes_metrics_and_svg(self, tmp_path, capsys):
        picks = write_picks(tmp_path)
        out = tmp_path / "plan.svg"
        assert main(["plan", "--scenario", "1", "--picks", str(picks),
                     "--out", str(out)]) == 0
        printed = capsys.readouterr().out
        doc = json.loads(printed[:printed.rindex("}") + 1])
        assert 0.0 <= doc["closeness"] <= 1.0
        assert out.exists()
        assert out.read_text().lstrip().startswith("<svg")

    def test_missing_picks_file_fails_cleanly(self, tmp_path, capsys):
        assert main(["plan", "--scenario", "1",
                     "--picks", str(tmp_path / "absent.json")]) == 1
        assert "error:" in capsys.readouterr().err

    def test_malformed_picks_file_fails_cleanly(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["plan", "--scenario", "1", "--picks", str(bad)]) == 1
        assert "error:" in capsys.readouterr().err


class TestEvalCommand:
    def test_random_agent_summary(self, tmp_path, capsys):
        out = tmp_path / "summary.json"
        assert main(["eval", "--agent", "random", "--scenario", "1",
                     "--episodes", "2", "--max-steps", "15",
                     "--seed", "3", "--out", str(out)]) == 0
        printed = capsys.readouterr().out
        assert "scenario" in printed and "success" in printed
        doc = json.loads(out.read_text())
        assert len(doc) == 1
        assert doc[0]["scenario"] == 1
        assert doc[0]["episodes"] == 2

    def test_scenario_range(self, capsys):
        assert main(["eval", "--agent", "random", "--scenario", "1..2",
                     "--episodes", "1", "--max-steps", "10",
                     "--seed", "0"]) == 0
        printed = capsys.readouterr().out
        assert "total" in printed

    def test_ppo_agent_needs_checkpoint(self, capsys):
        assert main(["eval", "--agent", "ppo", "--scenario", "1",
                     "--episodes", "1"]) == 1
        assert "checkpoint" in capsys.readouterr().err


class TestTrainCommand:
    def test_hillclimb_writes_solution(self, tmp_path, capsys):
        out = tmp_path / "solution.json"
        assert main(["train", "--agent", "hillclimb", "--scenario", "1",
                     "--restarts", "20", "--max-steps", "60",
                     "--seed", "42", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["success"] is True
        assert doc["best_closeness"] >= 0.8
        assert "success" in capsys.readouterr().out

    def test_ppo_then_plot(self, tmp_path, capsys):
        ckpt = tmp_path / "policy.pt"
        report = tmp_path / "report.json"
        assert main(["train", "--agent", "ppo", "--scenario", "1",
                     "--iterations", "1", "--batch-episodes", "2",
                     "--max-steps", "6", "--seed", "0",
                     "--out", str(ckpt), "--report", str(report)]) == 0
        printed = capsys.readouterr().out
        assert "iter" in printed
        assert ckpt.exists() and report.exists()

        png = tmp_path / "curves.png"
        assert main(["plot", "--report", str(report), "--out", str(png)]) == 0
        assert png.exists()

    def test_plot_missing_report_fails_cleanly(self, tmp_path, capsys):
        assert main(["plot", "--report", str(tmp_path / "none.json")]) == 1
        assert "error:" in capsys.readouterr().err


class TestRenderCommand:
    def test_renders_frames_from_trajectory(self, tmp_path, capsys):
        config = make_env_config(scenario=1, seed=7, max_steps=30)
        env = LayoutEnv(config)
        env.reset()
        records = []
        import numpy as np
        for _ in range(3):
            legal = np.flatnonzero(env.action_mask())
            if legal.size == 0 or env.done:
                break
            action = int(legal[0])
            env.step(action)
            records.append({"action": action})
        log = tmp_path / "episode.jsonl"
        save_trajectory(log, config, 7, records)

        out_dir = tmp_path / "frames"
        assert main(["render", "--trajectory", str(log),
                     "--out", str(out_dir), "--format", "both",
                     "--cell-px", "4"]) == 0
        pngs = sorted(out_dir.glob("frame_*.png"))
        svgs = sorted(out_dir.glob("frame_*.svg"))
        assert len(pngs) == len(records) + 1
        assert len(svgs) == len(records) + 1
        assert "frame(s)" in capsys.readouterr().out

    def test_missing_trajectory_fails_cleanly(self, tmp_path, capsys):
        assert main(["render", "--trajectory",
                     str(tmp_path / "none.jsonl")]) == 1
        assert "error:" in capsys.readouterr().err
