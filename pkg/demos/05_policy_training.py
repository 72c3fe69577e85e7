"""Train a small PPO policy on the easiest scenario and watch it improve.

The policy is a two-conv-layer actor-critic over the label-grid observation
(rooms channel + structure channel), with illegal actions masked to
probability zero. A fixed reset pool recycles the same initial boards every
iteration so the per-iteration mean reward is comparable across the run.
This stays deliberately tiny: well under a minute of CPU, enough to see the
curve move, not enough to solve the scenario outright. The checkpoint carries a
digest of its configs and refuses to load if either was tampered with.

Outputs: demos/out/ppo_demo.pt, ppo_demo_report.json, ppo_demo_curve.png.

Run:  python3 demos/05_policy_training.py
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from laserwall import evaluate, make_env_config
from laserwall.ppo import PPOAgent, PPOConfig, load_checkpoint, train

OUT = Path(__file__).parent / "out"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    env_config = make_env_config(scenario=1, seed=750, max_steps=20)
    ppo = PPOConfig(batch_episodes=8, reset_pool=8, conv_channels=(8, 16),
                    hidden_size=64, learning_rate=3e-4, seed=0)
    checkpoint = OUT / "ppo_demo.pt"
    report_path = OUT / "ppo_demo_report.json"

    print("Training 40 iterations of 8 episodes on scenario 1 (seed 750,")
    print("20-step episodes, fixed reset pool of 8 boards)...\n")
    report = train(ppo, env_config, iterations=40,
                   checkpoint_path=checkpoint, report_path=report_path)

    print("iter  mean_reward  mean_closeness  mean_length")
    for row in report.rows[::4] + [report.rows[-1]]:
        print(f"{row['iteration']:4d}  {row['mean_reward']:11.2f}"
              f"  {row['mean_closeness']:14.3f}  {row['mean_length']:11.1f}")
    first = report.mean_reward(0, 5)
    last = report.mean_reward(30, 40)
    print(f"\nmean reward, iterations 0-4:   {first:8.2f}")
    print(f"mean reward, iterations 30-39: {last:8.2f}")
    print(f"wall clock: {report.wall_clock_seconds:.0f}s")

    net, loaded_ppo, loaded_env = load_checkpoint(checkpoint)
    print(f"\nReloaded {checkpoint.name}; digest verified, scenario"
          f" {loaded_env.scenario.id}, seed {loaded_ppo.seed}.")
    summary = evaluate(PPOAgent(net, loaded_env.scenario.n_rooms),
                       env_config, episodes=20, seed=3000)
    print(f"Greedy policy over 20 fresh episodes: mean reward"
          f" {summary.mean_reward:.1f}, success rate {summary.success_rate:.2f},"
          f" mean closeness {summary.mean_closeness:.3f}.")
    print("(A policy trained on 8 fixed boards generalizes weakly to fresh")
    print("seeds; the training curve, not this eval, is the point here.)")

    iters = [row["iteration"] for row in report.rows]
    rewards = [row["mean_reward"] for row in report.rows]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(iters, rewards, marker="o")
    ax.set_xlabel("iteration")
    ax.set_ylabel("mean episode reward")
    ax.set_title("PPO on scenario 1, reset pool of 8")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    curve = OUT / "ppo_demo_curve.png"
    fig.savefig(curve, dpi=120)
    print(f"\nwrote {curve}")
    print("The CLI wraps the same loop:")
    print("  laserwall train --agent ppo --scenario 1 --iterations 50"
          " --out policy.pt --report report.json")
    print("  laserwall plot --report report.json --out curve.png")


if __name__ == "__main__":
    main()
