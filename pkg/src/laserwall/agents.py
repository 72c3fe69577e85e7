"""Baseline decision-makers: random and greedy hill-climbing with optional
annealed acceptance, plus a shared evaluation driver.

HillClimb scores every unmasked action by the closeness it would reach in one
step (simulated on a cloned state). At temperature 0 it is a strict argmax
with lowest-index tie-breaking; at positive temperature it walks the ranked
candidates and accepts a non-improving one with Metropolis probability
exp((candidate - current) / T).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .env import LayoutEnv, EnvConfig
from .errors import NoLegalAction


@dataclass(frozen=True)
class RandomConfig:
    seed: int = 0


@dataclass(frozen=True)
class HillClimbConfig:
    restarts: int = 500
    temperature: float = 0.0
    temperature_decay: float = 0.98
    patience: int = 3  # consecutive non-improving steps before a restart
    seed: int = 0


class RandomAgent:
    """Uniform choice over unmasked actions."""

    def __init__(self, config: RandomConfig = RandomConfig()):
        self.config = config
        self._rng = np.random.default_rng(config.seed)

    def act(self, observation, action_mask: np.ndarray,
            env: Optional[LayoutEnv] = None) -> int:
        legal = np.flatnonzero(action_mask)
        if legal.size == 0:
            raise NoLegalAction("action mask has no legal action")
        return int(self._rng.choice(legal))


class HillClimbAgent:
    """One-step lookahead over the masked action set."""

    def __init__(self, config: HillClimbConfig = HillClimbConfig()):
        self.config = config
        self._rng = np.random.default_rng(config.seed)
        self.temperature = config.temperature

    def act(self, observation, action_mask: np.ndarray,
            env: Optional[LayoutEnv] = None) -> int:
        if env is None:
            raise ValueError("HillClimbAgent needs the environment to simulate steps")
        legal = np.flatnonzero(action_mask)
        if legal.size == 0:
            raise NoLegalAction("action mask has no legal action")
        current = env.last_closeness
        scored = [(env.peek_closeness(int(a))[0], int(a)) for a in legal]
        ranked = sorted(scored, key=lambda sa: (-sa[0], sa[1]))
        best = ranked[0][1]
        if self.temperature <= 0.0:
            return best
        for c, a in ranked:
            if c > current:
                return a
            p = math.exp((c - current) / self.temperature)
            if self._rng.random() < p:
                return a
        return best

    def cool(self) -> None:
        self.temperature *= self.config.temperature_decay


@dataclass
class SolveResult:
    success: bool
    best_closeness: float
    restarts_used: int
    total_steps: int
    elapsed_seconds: float
    best_seed: Optional[int] = None
    best_actions: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "success": self.success,
            "best_closeness": self.best_closeness,
            "restarts_used": self.restarts_used,
            "total_steps": self.total_steps,
            "elapsed_seconds": self.elapsed_seconds,
            "best_seed": self.best_seed,
            "best_actions": list(self.best_actions),
        }


def solve_hillclimb(config: EnvConfig, hc: HillClimbConfig = HillClimbConfig(),
                    time_budget: Optional[float] = None) -> SolveResult:
    """Restarted hill climbing until an episode terminates (closeness reaches
    the threshold) or the restart/time budget runs out."""
    env = LayoutEnv(config)
    agent = HillClimbAgent(hc)
    best = 0.0
    total_steps = 0
    t0 = time.monotonic()
    for restart in range(hc.restarts):
        seed = config.seed + restart
        env.reset(seed=seed)
        agent.temperature = hc.temperature
        stall = 0
        actions: list[int] = []
        while not env.done:
            mask = env.action_mask()
            if not mask.any():
                break
            before = env.last_closeness
            a = agent.act(None, mask, env)
            _obs, _r, term, _trunc, _info = env.step(a)
            actions.append(a)
            agent.cool()
            total_steps += 1
            if env.last_closeness > before:
                stall = 0
            else:
                stall += 1
                if stall >= hc.patience:
                    break
            best = max(best, env.last_closeness)
        best = max(best, env.last_closeness)
        if env.done and env.last_closeness >= config.reward.terminal_threshold:
            return SolveResult(True, best, restart + 1, total_steps,
                               time.monotonic() - t0, seed, tuple(actions))
        if time_budget is not None and time.monotonic() - t0 > time_budget:
            return SolveResult(False, best, restart + 1, total_steps,
                               time.monotonic() - t0)
    return SolveResult(False, best, hc.restarts, total_steps,
                       time.monotonic() - t0)


@dataclass(frozen=True)
class EvalSummary:
    episodes: int
    mean_reward: float
    success_rate: float
    mean_missed_connections: float
    mean_closeness: float
    mean_length: float

    def to_dict(self) -> dict:
        return {
            "episodes": self.episodes,
            "mean_reward": self.mean_reward,
            "success_rate": self.success_rate,
            "mean_missed_connections": self.mean_missed_connections,
            "mean_closeness": self.mean_closeness,
            "mean_length": self.mean_length,
        }


def evaluate(agent, config: EnvConfig, episodes: int,
             seed: Optional[int] = None) -> EvalSummary:
    """Roll out the agent greedily and summarize rewards, success, and missed
    connections."""
    env = LayoutEnv(config)
    base = config.seed if seed is None else seed
    rewards, successes, missed, closes, lengths = [], [], [], [], []
    for ep in range(episodes):
        env.reset(seed=base + ep)
        total = 0.0
        while not env.done:
            mask = env.action_mask()
            if not mask.any():
                break
            a = agent.act(env.observe(), mask, env)
            _obs, r, term, trunc, _info = env.step(a)
            total += r
        m = env.metrics()
        rewards.append(total)
        successes.append(env.last_closeness >= config.reward.terminal_threshold)
        missed.append(m.connections_required - m.connections_satisfied)
        closes.append(env.last_closeness)
        lengths.append(env.steps)
    n = max(len(rewards), 1)
    return EvalSummary(
        episodes=episodes,
        mean_reward=float(np.mean(rewards)) if rewards else 0.0,
        success_rate=float(np.mean(successes)) if successes else 0.0,
        mean_missed_connections=float(np.mean(missed)) if missed else 0.0,
        mean_closeness=float(np.mean(closes)) if closes else 0.0,
        mean_length=float(np.mean(lengths)) if lengths else 0.0,
    )
