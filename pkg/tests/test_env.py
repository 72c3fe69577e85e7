"""Episodic environment: reward contract, masks, determinism, trajectories."""

import numpy as np
import pytest

from laserwall import (
    EnvConfig,
    EpisodeFinished,
    LayoutEnv,
    ObservationSpec,
    ResetExhausted,
    RewardSpec,
    TRANSFORMATIONS,
    ValidationError,
    decode_rgb_observation,
    label_grid_observation,
    load_scenario,
    load_trajectory,
    make_env_config,
    replay_trajectory,
    rgb_observation,
    save_trajectory,
)


def fresh_env(scenario=1, seed=11, **kwargs):
    config = make_env_config(scenario=scenario, seed=seed, **kwargs)
    env = LayoutEnv(config)
    env.reset()
    return env


def masked_in_actions(env):
    return [int(a) for a in np.flatnonzero(env.action_mask())]


class TestRewardSpec:
    def test_default_bounds(self):
        spec = RewardSpec()
        assert spec.bounds == (-55.0, 120.0)

    def test_shaping_variants(self):
        assert RewardSpec().shaped(0.9) == 0.9
        assert RewardSpec(shaping="quadratic").shaped(0.9) == pytest.approx(0.81)

    def test_rejects_bad_values(self):
        with pytest.raises(ValidationError):
            RewardSpec(terminal_threshold=0.0)
        with pytest.raises(ValidationError):
            RewardSpec(terminal_threshold=1.5)
        with pytest.raises(ValidationError):
            RewardSpec(violation_penalty=1.0)
        with pytest.raises(ValidationError):
            RewardSpec(terminal_scale=-1.0)
        with pytest.raises(ValidationError):
            RewardSpec(shaping="cubic")

    def test_observation_spec_rejects_bad_values(self):
        with pytest.raises(ValidationError):
            ObservationSpec(mode="ascii")
        with pytest.raises(ValidationError):
            ObservationSpec(cell_px=0)

    def test_env_config_rejects_bad_max_steps(self):
        sc = load_scenario(1)
        with pytest.raises(ValidationError):
            EnvConfig(scenario=sc, max_steps=0)

    def test_config_dict_roundtrip(self):
        config = make_env_config(scenario=2, infiltration="decreasing",
                                 horizon=9, max_steps=77, seed=5,
                                 observation="rgb_image", cell_px=2)
        again = EnvConfig.from_dict(config.to_dict())
        assert again.to_dict() == config.to_dict()

    def test_unknown_infiltration_name(self):
        with pytest.raises(ValidationError):
            make_env_config(scenario=1, infiltration="oscillating")


class TestResetAndObservation:
    def test_reset_invariants(self, scenarios):
        for sc in scenarios[:3]:
            env = LayoutEnv(make_env_config(scenario=sc, seed=3))
            obs, info = env.reset()
            assert env.steps == 0
            assert not env.done
            assert env.state.partition.n_regions == sc.n_rooms
            assert not env.state.assignment.unassigned
            assert obs.shape == (2, sc.grid_height, sc.grid_width)
            assert info["steps"] == 0
            assert info["outcome"] is None
            assert info["seed"] == env.episode_seed

    def test_reset_is_deterministic(self):
        a = fresh_env(scenario=3, seed=21)
        b = fresh_env(scenario=3, seed=21)
        assert np.array_equal(a.observe(), b.observe())
        assert a.last_closeness == b.last_closeness

    def test_different_seeds_vary(self):
        base = fresh_env(scenario=1, seed=0).observe()
        assert any(
            not np.array_equal(base, fresh_env(scenario=1, seed=s).observe())
            for s in range(1, 6))

    def test_label_grid_channels(self):
        env = fresh_env(scenario=2, seed=4)
        obs = env.observe()
        rooms, structure = obs[0], obs[1]
        assert obs.dtype == np.int32
        assert structure.min() >= 0 and structure.max() <= 3
        assert rooms.min() >= -1 and rooms.max() < env.scenario.n_rooms
        # Free cells are all assigned after a successful reset.
        assert (rooms[structure == 0] >= 0).all()
        entrance = {(c.x, c.y) for c in env.state.grid.entrance}
        marked = {(int(x), int(y))
                  for y, x in zip(*np.nonzero(structure == 3))}
        assert marked == entrance

    def test_rgb_roundtrip(self):
        env = fresh_env(scenario=1, seed=9)
        grid = label_grid_observation(env.state)
        for px in (1, 3):
            img = rgb_observation(env.state, px)
            assert img.dtype == np.uint8
            assert img.shape == (grid.shape[1] * px, grid.shape[2] * px, 3)
            assert np.array_equal(decode_rgb_observation(img, px), grid)

    def test_rgb_observation_mode(self):
        env = fresh_env(scenario=1, seed=9, observation="rgb_image", cell_px=2)
        img = env.observe()
        assert img.shape == (env.scenario.grid_height * 2,
                             env.scenario.grid_width * 2, 3)

    def test_single_room_scenario_finishes_at_reset(self):
        doc = {"id": 90, "n_rooms": 1, "desired_areas": [64],
               "entrance_facade": "south",
               "grid": {"width": 8, "height": 8}}
        env = LayoutEnv(make_env_config(scenario=doc, seed=0))
        env.reset()
        assert env.done
        assert env.terminated == (env.last_closeness >= 0.8)


class TestActionsAndStep:
    def test_action_encode_decode_roundtrip(self):
        env = fresh_env(scenario=1)
        for a in range(env.action_count):
            wall_id, t = env.decode_action(a)
            assert env.encode_action(wall_id, t) == a
        with pytest.raises(ValidationError):
            env.decode_action(env.action_count)
        with pytest.raises(ValidationError):
            env.decode_action(-1)

    def test_step_before_reset_raises(self):
        env = LayoutEnv(make_env_config(scenario=1))
        with pytest.raises(EpisodeFinished):
            env.step(0)

    def test_mask_matches_one_step_lookahead(self):
        env = fresh_env(scenario=1, seed=7)
        mask = env.action_mask()
        for a in range(env.action_count):
            _, ok = env.peek_closeness(a)
            assert ok == bool(mask[a])

    def test_peek_does_not_mutate(self):
        env = fresh_env(scenario=2, seed=5)
        before = env.observe().copy()
        steps = env.steps
        for a in range(0, env.action_count, 3):
            env.peek_closeness(a)
        assert np.array_equal(env.observe(), before)
        assert env.steps == steps

    def test_violation_keeps_grid_and_counts_step(self):
        env = fresh_env(scenario=1, seed=7)
        mask = env.action_mask()
        blocked = [a for a in range(env.action_count) if not mask[a]]
        assert blocked, "expected at least one illegal action"
        before = env.observe().copy()
        obs, reward, terminated, truncated, info = env.step(blocked[0])
        assert reward == -5.0
        assert not terminated and not truncated
        assert env.steps == 1
        assert np.array_equal(obs, before)
        assert info["outcome"] in {"out_of_bounds", "wall_collision",
                                   "entrance_blockage", "beam_crossing"}

    def test_legal_step_reward_is_deviation(self):
        env = fresh_env(scenario=1, seed=7)
        action = masked_in_actions(env)[0]
        peeked, ok = env.peek_closeness(action)
        assert ok
        _, reward, terminated, _, info = env.step(action)
        assert env.last_closeness == pytest.approx(peeked)
        if not terminated:
            assert reward == pytest.approx(-(1.0 - peeked))
        assert info["reward_decomposition"]["total"] == pytest.approx(reward)

    def test_truncation_adds_fail_penalty(self):
        env = fresh_env(scenario=1, seed=7, max_steps=1)
        action = masked_in_actions(env)[0]
        _, reward, terminated, truncated, _ = env.step(action)
        if terminated:
            pytest.skip("seed reached the threshold in one step")
        assert truncated
        assert env.last_closeness < 0.8
        assert env.last_breakdown.terminal == -50.0
        assert reward == pytest.approx(-(1.0 - env.last_closeness) - 50.0)

    def test_step_after_done_raises(self):
        env = fresh_env(scenario=1, seed=7, max_steps=1)
        env.step(masked_in_actions(env)[0])
        assert env.done
        with pytest.raises(EpisodeFinished):
            env.step(0)

    def test_mask_empty_once_done(self):
        env = fresh_env(scenario=1, seed=7, max_steps=1)
        env.step(masked_in_actions(env)[0])
        assert not env.action_mask().any()

    def test_reward_bounds_under_random_play(self, rng):
        low, high = RewardSpec().bounds
        for seed in (0, 1):
            env = fresh_env(scenario=2, seed=seed, max_steps=30)
            while not env.done:
                _, reward, _, _, _ = env.step(int(rng.integers(env.action_count)))
                assert low <= reward <= high

    def test_reset_exhausted_error_exists(self):
        assert issubclass(ResetExhausted, Exception)


class TestTrajectories:
    def run_episode(self, config, seed, n_steps=12):
        env = LayoutEnv(config)
        env.reset(seed=seed)
        rng = np.random.default_rng(99)
        records = []
        for _ in range(n_steps):
            if env.done:
                break
            legal = masked_in_actions(env)
            action = legal[int(rng.integers(len(legal)))] if legal else 0
            _, reward, _, _, info = env.step(action)
            records.append({"action": action, "reward": reward,
                            "closeness": info["closeness"]})
        return env, records

    def test_save_load_replay_is_bit_identical(self, tmp_path):
        config = make_env_config(scenario=2, seed=6, max_steps=50)
        env, records = self.run_episode(config, seed=123)
        path = tmp_path / "episode.jsonl"
        save_trajectory(path, config, 123, records)

        loaded_config, loaded_seed, steps = load_trajectory(path)
        assert loaded_seed == 123
        assert loaded_config.to_dict() == config.to_dict()
        assert [s["action"] for s in steps] == [r["action"] for r in records]

        actions = [s["action"] for s in steps]
        states = list(replay_trajectory(loaded_config, loaded_seed, actions))
        assert len(states) == len(actions) + 1
        final_state, final_env = states[-1]
        assert np.array_equal(label_grid_observation(final_state),
                              label_grid_observation(env.state))
        assert final_env.last_closeness == env.last_closeness

    def test_load_rejects_headerless_file(self, tmp_path):
        path = tmp_path / "broken.jsonl"
        path.write_text('{"kind": "step", "action": 3}\n')
        with pytest.raises(ValidationError):
            load_trajectory(path)

    def test_replay_stops_at_episode_end(self):
        config = make_env_config(scenario=1, seed=7, max_steps=1)
        env = LayoutEnv(config)
        env.reset()
        action = masked_in_actions(env)[0]
        states = list(replay_trajectory(config, 7, [action, action, action]))
        assert len(states) == 2
