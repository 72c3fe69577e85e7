"""Minimal actor-critic policy gradient (PPO) for desk-scale training.

The policy is a small convolutional trunk over the label-grid observation with
separate policy and value heads. Updates use generalized advantage estimation
and the clipped surrogate objective. Illegal actions are masked to probability
exactly zero by writing -inf into their logits.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
import torch
import torch.nn as nn
import torch.nn.functional as F

from .env import EnvConfig, LayoutEnv
from .errors import DivergenceDetected, ValidationError


@dataclass(frozen=True)
class PPOConfig:
    clip_epsilon: float = 0.2
    discount: float = 0.99
    gae_lambda: float = 0.95
    epochs_per_batch: int = 4
    batch_episodes: int = 8
    learning_rate: float = 3e-4
    entropy_coef: float = 0.01
    value_coef: float = 0.5
    conv_channels: tuple[int, int] = (16, 32)
    hidden_size: int = 128
    max_grad_norm: float = 0.5
    reset_pool: int = 0
    seed: int = 0

    def __post_init__(self):
        if not (0.0 < self.clip_epsilon < 1.0):
            raise ValidationError("clip_epsilon must be in (0, 1)")
        if not (0.0 < self.discount <= 1.0) or not (0.0 < self.gae_lambda <= 1.0):
            raise ValidationError("discount and gae_lambda must be in (0, 1]")
        if self.batch_episodes < 1 or self.epochs_per_batch < 1:
            raise ValidationError("batch_episodes and epochs_per_batch must be >= 1")
        if self.reset_pool < 0:
            raise ValidationError("reset_pool must be >= 0")


class PolicyNet(nn.Module):
    """Two conv stages, a fully connected trunk, policy and value heads."""

    def __init__(self, in_channels: int, height: int, width: int,
                 n_actions: int, config: PPOConfig):
        super().__init__()
        c1, c2 = config.conv_channels
        self.conv1 = nn.Conv2d(in_channels, c1, kernel_size=3, stride=2, padding=1)
        self.conv2 = nn.Conv2d(c1, c2, kernel_size=3, stride=2, padding=1)
        # Each stride-2 conv with padding 1 maps n -> ceil(n / 2).
        h1 = (height + 1) // 2
        w1 = (width + 1) // 2
        h2 = (h1 + 1) // 2
        w2 = (w1 + 1) // 2
        self.fc = nn.Linear(c2 * h2 * w2, config.hidden_size)
        self.policy_head = nn.Linear(config.hidden_size, n_actions)
        self.value_head = nn.Linear(config.hidden_size, 1)

    def forward(self, x: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
        z = F.relu(self.conv1(x))
        z = F.relu(self.conv2(z))
        z = F.relu(self.fc(z.flatten(1)))
        return self.policy_head(z), self.value_head(z).squeeze(-1)


def _normalize_obs(obs: np.ndarray, n_rooms: int) -> np.ndarray:
    """Label grid (2, H, W) int -> float32 in [0, 1]-ish ranges."""
    out = obs.astype(np.float32).copy()
    out[0] = (out[0] + 1.0) / max(n_rooms, 1)
    out[1] = out[1] / 3.0
    return out


def masked_logits(logits: torch.Tensor, mask: torch.Tensor) -> torch.Tensor:
    return logits.masked_fill(~mask, float("-inf"))


def masked_distribution(logits: torch.Tensor,
                        mask: torch.Tensor) -> torch.distributions.Categorical:
    return torch.distributions.Categorical(logits=masked_logits(logits, mask))


@dataclass
class TrainReport:
    seed: int
    iterations: int
    rows: list[dict] = field(default_factory=list)
    wall_clock_seconds: float = 0.0

    def mean_reward(self, first: int = 0, last: Optional[int] = None) -> float:
        rows = self.rows[first:last]
        return float(np.mean([r["mean_reward"] for r in rows])) if rows else 0.0

    def to_dict(self) -> dict:
        return {"seed": self.seed, "iterations": self.iterations,
                "rows": self.rows, "wall_clock_seconds": self.wall_clock_seconds}

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")

    @staticmethod
    def load(path: Union[str, Path]) -> "TrainReport":
        doc = json.loads(Path(path).read_text())
        return TrainReport(seed=doc["seed"], iterations=doc["iterations"],
                           rows=doc["rows"],
                           wall_clock_seconds=doc.get("wall_clock_seconds", 0.0))


def config_digest(ppo: PPOConfig, env_config: EnvConfig) -> str:
    blob = json.dumps({"ppo": asdict(ppo), "env": env_config.to_dict()},
                      sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def build_policy(env_config: EnvConfig, ppo: PPOConfig) -> PolicyNet:
    sc = env_config.scenario
    torch.manual_seed(ppo.seed)
    return PolicyNet(2, sc.grid_height, sc.grid_width,
                     sc.n_walls * 14, ppo)


def save_checkpoint(path: Union[str, Path], net: PolicyNet, ppo: PPOConfig,
                    env_config: EnvConfig, iterations: int) -> None:
    torch.save({
        "state_dict": net.state_dict(),
        "config_digest": config_digest(ppo, env_config),
        "ppo_config": asdict(ppo),
        "env_config": env_config.to_dict(),
        "iterations": iterations,
    }, Path(path))


def load_checkpoint(path: Union[str, Path]) -> tuple[PolicyNet, PPOConfig, EnvConfig]:
    blob = torch.load(Path(path), weights_only=False)
    ppo_doc = blob["ppo_config"]
    ppo_doc["conv_channels"] = tuple(ppo_doc["conv_channels"])
    ppo = PPOConfig(**ppo_doc)
    env_config = EnvConfig.from_dict(blob["env_config"])
    net = build_policy(env_config, ppo)
    net.load_state_dict(blob["state_dict"])
    if blob.get("config_digest") != config_digest(ppo, env_config):
        raise ValidationError("checkpoint digest does not match its config")
    return net, ppo, env_config


class PPOAgent:
    """Greedy (argmax) policy wrapper for evaluation rollouts."""

    def __init__(self, net: PolicyNet, n_rooms: int):
        self.net = net
        self.n_rooms = n_rooms

    @torch.no_grad()
    def act(self, observation: np.ndarray, action_mask: np.ndarray,
            env=None) -> int:
        x = torch.from_numpy(_normalize_obs(observation, self.n_rooms)).unsqueeze(0)
        logits, _ = self.net(x)
        mask = torch.from_numpy(action_mask).unsqueeze(0)
        return int(masked_logits(logits, mask).argmax(dim=-1).item())


@dataclass
class _Rollout:
    obs: list = field(default_factory=list)
    actions: list = field(default_factory=list)
    masks: list = field(default_factory=list)
    log_probs: list = field(default_factory=list)
    values: list = field(default_factory=list)
    rewards: list = field(default_factory=list)
    dones: list = field(default_factory=list)


def _collect_episode(env: LayoutEnv, net: PolicyNet, n_rooms: int, seed: int,
                     roll: _Rollout) -> tuple[float, int, float]:
    obs, info = env.reset(seed=seed)
    total, steps = 0.0, 0
    while not env.done:
        mask_np = env.action_mask()
        if not mask_np.any():
            # No legal action: every action violates; sample any to continue.
            mask_np = np.ones(env.action_count, dtype=bool)
        x = torch.from_numpy(_normalize_obs(obs, n_rooms)).unsqueeze(0)
        with torch.no_grad():
            logits, value = net(x)
            dist = masked_distribution(logits, torch.from_numpy(mask_np).unsqueeze(0))
            action = dist.sample()
            log_prob = dist.log_prob(action)
        a = int(action.item())
        next_obs, reward, terminated, truncated, _info = env.step(a)
        roll.obs.append(_normalize_obs(obs, n_rooms))
        roll.actions.append(a)
        roll.masks.append(mask_np)
        roll.log_probs.append(float(log_prob.item()))
        roll.values.append(float(value.item()))
        roll.rewards.append(float(reward))
        roll.dones.append(terminated or truncated)
        obs = next_obs
        total += reward
        steps += 1
    return total, steps, env.last_closeness


def _gae(rewards: np.ndarray, values: np.ndarray, dones: np.ndarray,
         gamma: float, lam: float) -> tuple[np.ndarray, np.ndarray]:
    n = len(rewards)
    adv = np.zeros(n, dtype=np.float64)
    running = 0.0
    next_value = 0.0
    for t in range(n - 1, -1, -1):
        if dones[t]:
            running = 0.0
            next_value = 0.0
        delta = rewards[t] + gamma * next_value - values[t]
        running = delta + gamma * lam * running
        adv[t] = running
        next_value = values[t]
    returns = adv + values
    return adv, returns


def train(ppo: PPOConfig, env_config: EnvConfig, iterations: int,
          checkpoint_path: Optional[Union[str, Path]] = None,
          report_path: Optional[Union[str, Path]] = None) -> TrainReport:
    """Clipped-surrogate PPO; returns per-iteration statistics."""
    torch.manual_seed(ppo.seed)
    net = build_policy(env_config, ppo)
    optimizer = torch.optim.Adam(net.parameters(), lr=ppo.learning_rate)
    env = LayoutEnv(env_config)
    n_rooms = env_config.scenario.n_rooms
    report = TrainReport(seed=ppo.seed, iterations=iterations)
    t0 = time.monotonic()
    episode_counter = 0

    for it in range(iterations):
        roll = _Rollout()
        ep_rewards, ep_lengths, ep_closeness = [], [], []
        for _ in range(ppo.batch_episodes):
            # A nonzero reset_pool cycles a fixed set of initial states, which
            # keeps per-iteration mean reward comparable across iterations.
            if ppo.reset_pool > 0:
                seed = env_config.seed + (episode_counter % ppo.reset_pool)
            else:
                seed = env_config.seed + 100_000 * ppo.seed + episode_counter
            episode_counter += 1
            total, steps, close = _collect_episode(env, net, n_rooms, seed, roll)
            ep_rewards.append(total)
            ep_lengths.append(steps)
            ep_closeness.append(close)

        obs_t = torch.from_numpy(np.asarray(roll.obs, dtype=np.float32))
        act_t = torch.from_numpy(np.asarray(roll.actions, dtype=np.int64))
        mask_t = torch.from_numpy(np.asarray(roll.masks))
        old_logp_t = torch.from_numpy(np.asarray(roll.log_probs, dtype=np.float32))
        values_np = np.asarray(roll.values, dtype=np.float64)
        adv_np, ret_np = _gae(np.asarray(roll.rewards), values_np,
                              np.asarray(roll.dones, dtype=bool),
                              ppo.discount, ppo.gae_lambda)
        adv_t = torch.from_numpy(adv_np.astype(np.float32))
        if adv_t.numel() > 1:
            adv_t = (adv_t - adv_t.mean()) / (adv_t.std() + 1e-8)
        ret_t = torch.from_numpy(ret_np.astype(np.float32))

        for _epoch in range(ppo.epochs_per_batch):
            logits, values = net(obs_t)
            dist = masked_distribution(logits, mask_t)
            logp = dist.log_prob(act_t)
            ratio = torch.exp(logp - old_logp_t)
            surr1 = ratio * adv_t
            surr2 = torch.clamp(ratio, 1.0 - ppo.clip_epsilon,
                                1.0 + ppo.clip_epsilon) * adv_t
            policy_loss = -torch.min(surr1, surr2).mean()
            # Huber keeps the value gradient bounded against +-100 returns.
            value_loss = F.smooth_l1_loss(values, ret_t, beta=10.0)
            entropy = dist.entropy().mean()
            loss = (policy_loss + ppo.value_coef * value_loss
                    - ppo.entropy_coef * entropy)
            if not torch.isfinite(loss):
                report.wall_clock_seconds = time.monotonic() - t0
                raise DivergenceDetected(
                    f"non-finite loss at iteration {it}", report=report)
            optimizer.zero_grad()
            loss.backward()
            nn.utils.clip_grad_norm_(net.parameters(), ppo.max_grad_norm)
            optimizer.step()

        report.rows.append({
            "iteration": it,
            "mean_reward": float(np.mean(ep_rewards)),
            "mean_length": float(np.mean(ep_lengths)),
            "mean_closeness": float(np.mean(ep_closeness)),
            "wall_clock_s": time.monotonic() - t0,
        })

    report.wall_clock_seconds = time.monotonic() - t0
    if checkpoint_path is not None:
        save_checkpoint(checkpoint_path, net, ppo, env_config, iterations)
    if report_path is not None:
        report.save(report_path)
    report.net = net  # type: ignore[attr-defined]
    return report
