"""Edge-by-edge simple-graph construction environment.

An episode of order n makes one 0/1 decision per vertex pair, in row-wise
upper-triangle order. The observation fed to the agent is a flat 0/1 vector
of length n(n-1): the partial edge list so far, then a one-hot marker for the
pair about to be decided (all-zero once the episode has finished). All
intermediate rewards are zero; the final reward is whatever the supplied
reward function assigns to the finished graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .graphs import Graph, from_edge_bits, num_pairs


@dataclass(frozen=True, eq=False)
class Observation:
    """Snapshot of one episode: flat vector plus the cursor pair index."""

    n: int
    vector: np.ndarray  # shape (n(n-1),), uint8
    pos: int            # next pair index; == num_pairs(n) when finished

    @property
    def edge_part(self) -> np.ndarray:
        return self.vector[: num_pairs(self.n)]

    @property
    def cursor_part(self) -> np.ndarray:
        return self.vector[num_pairs(self.n):]

    @property
    def done(self) -> bool:
        return self.pos >= num_pairs(self.n)


@dataclass(frozen=True)
class Trajectory:
    """One finished episode: the action string determines everything else."""

    n: int
    actions: np.ndarray  # shape (num_pairs(n),), uint8
    reward: float

    def graph(self) -> Graph:
        return from_edge_bits(self.n, self.actions)

    def observation_matrix(self) -> np.ndarray:
        """(num_pairs, n(n-1)) float64 matrix of the observations at which
        each action was taken, reconstructed from the action string."""
        t = num_pairs(self.n)
        edge = np.zeros((t, t), dtype=np.float64)
        for step in range(1, t):
            edge[step, :step] = self.actions[:step]
        return np.hstack([edge, np.eye(t)])


def initial_observation(n: int) -> Observation:
    if n < 2:
        raise ValueError(f"graph construction needs n >= 2, got {n}")
    t = num_pairs(n)
    vec = np.zeros(2 * t, dtype=np.uint8)
    vec[t] = 1
    return Observation(n, vec, 0)


def step(obs: Observation, action: int) -> tuple[Observation, float, bool]:
    """Apply one 0/1 action; returns (next observation, reward 0.0, done)."""
    if obs.done:
        raise RuntimeError("episode is finished; no further actions accepted")
    if action not in (0, 1):
        raise ValueError(f"action must be 0 or 1, got {action!r}")
    t = num_pairs(obs.n)
    vec = obs.vector.copy()
    vec[obs.pos] = action
    vec[t + obs.pos] = 0
    pos = obs.pos + 1
    if pos < t:
        vec[t + pos] = 1
    return Observation(obs.n, vec, pos), 0.0, pos >= t


def rollout(n: int, policy: Callable[[Observation], int],
            reward_fn: Callable[[Graph], float]) -> Trajectory:
    """Run one episode with a per-observation action sampler."""
    obs = initial_observation(n)
    actions = np.empty(num_pairs(n), dtype=np.uint8)
    done = False
    while not done:
        a = int(policy(obs))
        actions[obs.pos] = a
        obs, _, done = step(obs, a)
    return Trajectory(n, actions, float(reward_fn(from_edge_bits(n, actions))))


def batch_rollout(n: int, batch_size: int,
                  act_fn: Callable[[np.ndarray], np.ndarray],
                  reward_fn: Callable[[Graph], float],
                  map_fn=map) -> list[Trajectory]:
    """Advance ``batch_size`` episodes in lockstep.

    ``act_fn`` maps the (batch, n(n-1)) observation matrix for the current
    step to a (batch,) array of 0/1 actions; all episodes share the cursor.
    ``map_fn`` lets rewards be evaluated by a worker pool; results are
    consumed in batch order either way, so the outcome does not depend on it.
    """
    if n < 2:
        raise ValueError(f"graph construction needs n >= 2, got {n}")
    t = num_pairs(n)
    obs = np.zeros((batch_size, 2 * t), dtype=np.float64)
    obs[:, t] = 1.0
    actions = np.empty((batch_size, t), dtype=np.uint8)
    for pos in range(t):
        a = np.asarray(act_fn(obs), dtype=np.uint8)
        actions[:, pos] = a
        obs[:, pos] = a
        obs[:, t + pos] = 0.0
        if pos + 1 < t:
            obs[:, t + pos + 1] = 1.0
    graphs = [from_edge_bits(n, actions[b]) for b in range(batch_size)]
    rewards = list(map_fn(reward_fn, graphs))
    return [
        Trajectory(n, actions[b].copy(), float(rewards[b]))
        for b in range(batch_size)
    ]
