import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lapcex.bounds import MINUS_INF
from lapcex.env import (Observation, Trajectory, batch_rollout,
                        initial_observation, rollout, step)
from lapcex.graphs import from_edge_bits, num_pairs

FIG_ACTIONS = [1, 1, 0, 1, 1, 0]


class TestObservation:
    def test_initial_n4(self):
        obs = initial_observation(4)
        assert obs.vector.tolist() == [0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0]
        assert obs.pos == 0 and not obs.done

    def test_initial_n2_and_n3(self):
        assert initial_observation(2).vector.tolist() == [0, 1]
        assert initial_observation(3).vector.tolist() == [0, 0, 0, 1, 0, 0]

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            initial_observation(1)


class TestStep:
    def test_first_step(self):
        obs, r, done = step(initial_observation(4), 1)
        assert obs.vector.tolist() == [1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0]
        assert r == 0.0 and not done

    def test_full_episode_replay(self):
        obs = initial_observation(4)
        for a in FIG_ACTIONS:
            assert not obs.done
            # unfilled edge slots stay zero while the episode runs
            assert not obs.edge_part[obs.pos:].any()
            assert obs.cursor_part.sum() == 1 and obs.cursor_part[obs.pos] == 1
            obs, r, done = step(obs, a)
            assert r == 0.0
        assert done and obs.done
        assert obs.edge_part.tolist() == FIG_ACTIONS
        assert not obs.cursor_part.any()

    def test_terminal_step_rejected(self):
        obs = initial_observation(2)
        obs, _, done = step(obs, 1)
        assert done
        with pytest.raises(RuntimeError, match="finished"):
            step(obs, 0)

    def test_bad_action(self):
        with pytest.raises(ValueError, match="action"):
            step(initial_observation(3), 2)

    def test_n2_builds_k2(self):
        obs, _, done = step(initial_observation(2), 1)
        assert done and obs.edge_part.tolist() == [1]
        assert from_edge_bits(2, obs.edge_part).num_edges == 1


class TestRollout:
    def test_constant_one_policy(self):
        traj = rollout(4, lambda obs: 1, lambda g: float(g.num_edges))
        assert traj.actions.tolist() == [1] * 6
        assert traj.reward == 6

    def test_constant_zero_policy_sentinel(self):
        def screened(g):
            from lapcex.graphs import num_components
            return MINUS_INF if num_components(g) > 1 else 0.0
        traj = rollout(4, lambda obs: 0, screened)
        assert traj.reward == MINUS_INF

    def test_replay_policy(self):
        actions = iter(FIG_ACTIONS)
        traj = rollout(4, lambda obs: next(actions), lambda g: 0.0)
        assert sorted(traj.graph().edges()) == [(0, 1), (0, 2), (1, 2), (1, 3)]

    def test_trajectory_length(self):
        for n in (2, 3, 5):
            traj = rollout(n, lambda obs: 1, lambda g: 0.0)
            assert len(traj.actions) == num_pairs(n)

    @given(st.lists(st.integers(0, 1), min_size=6, max_size=6))
    @settings(max_examples=64, deadline=None)
    def test_bijection(self, bits):
        # distinct action strings yield distinct labeled graphs and back
        g = from_edge_bits(4, bits)
        traj = Trajectory(4, np.array(bits, dtype=np.uint8), 0.0)
        assert traj.graph() == g

    def test_observation_matrix_matches_replay(self):
        rng = np.random.default_rng(0)
        actions = rng.integers(0, 2, size=num_pairs(5)).astype(np.uint8)
        traj = Trajectory(5, actions, 0.0)
        x = traj.observation_matrix()
        obs = initial_observation(5)
        for t, a in enumerate(actions):
            assert x[t].tolist() == obs.vector.astype(float).tolist()
            obs, _, _ = step(obs, int(a))


class TestBatchRollout:
    def test_lockstep_matches_single(self):
        # deterministic policy depending on the cursor position only
        def act_batch(obs_matrix):
            t = num_pairs(4)
            pos = int(np.nonzero(obs_matrix[0, t:])[0][0])
            return np.full(obs_matrix.shape[0], pos % 2, dtype=np.uint8)

        trajs = batch_rollout(4, 3, act_batch, lambda g: float(g.num_edges))
        single = rollout(4, lambda obs: obs.pos % 2, lambda g: float(g.num_edges))
        for traj in trajs:
            assert traj.actions.tolist() == single.actions.tolist()
            assert traj.reward == single.reward

    def test_batch_rewards_in_order(self):
        calls = []

        def act_batch(obs_matrix):
            return np.arange(obs_matrix.shape[0]) % 2

        def reward(g):
            calls.append(g.num_edges)
            return float(g.num_edges)

        trajs = batch_rollout(3, 4, act_batch, reward)
        assert [t.reward for t in trajs] == calls
