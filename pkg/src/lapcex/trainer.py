"""Cross-entropy training loop over the graph construction environment.

Each generation: roll out a fresh batch with the current policy, pool it with
the survivors carried over from the previous generation, select the elite
trajectories by a nearest-rank reward percentile and take one optimizer step
on their (observation, action) pairs, carry the top slice forward as the next
survivors. Action randomness follows a stagnation-escalation schedule: reset
on improvement, multiplied after a fixed number of stagnant generations,
capped at a maximum.
"""

from __future__ import annotations

import csv
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from .bounds import MINUS_INF
from .env import Trajectory, batch_rollout
from .graphs import Graph, to_dot, to_graph6
from .policy import PolicyNet, sample_actions

STATS_HEADER = ("gen", "max_all", "max_gen", "learn_thr", "survive_thr",
                "act_rndness", "ms", "best_g6")


@dataclass
class TrainConfig:
    """Training parameters; defaults follow the published configuration."""

    compute_reward: Callable[[Graph], float]
    n: int = 20
    batch_size: int = 200
    num_generations: int = 1000
    percent_learn: float = 90.0
    percent_survive: float = 97.5
    neurons: tuple[int, ...] = (72, 12)
    learning_rate: float = 0.003
    act_rndness_init: float = 0.005
    act_rndness_wait: int = 10
    act_rndness_mult: float = 1.1
    act_rndness_max: float = 0.025
    verbose: bool = True
    output_best_graph_rate: int = 25
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.batch_size < 1:
            raise ValueError("batch_size must be positive")
        if self.num_generations < 0:
            raise ValueError("num_generations must be non-negative")
        if not 0 < self.percent_learn < self.percent_survive < 100:
            raise ValueError("need 0 < percent_learn < percent_survive < 100")
        if not 0 < self.act_rndness_init <= self.act_rndness_max < 1:
            raise ValueError("need 0 < act_rndness_init <= act_rndness_max < 1")
        if self.act_rndness_mult <= 1:
            raise ValueError("act_rndness_mult must exceed 1")
        if self.workers < 1:
            raise ValueError("workers must be positive")


@dataclass
class GenerationStats:
    gen: int
    max_all: float
    max_gen: float
    learn_thr: float
    survive_thr: float
    act_rndness: float
    elapsed_ms: float
    best_g6: str


@dataclass
class TrainResult:
    best_reward: float
    best_graph: Graph | None
    stats: list[GenerationStats]
    interrupted: bool = False


class ActRandomness:
    """Stagnation-driven schedule for the random-action rate."""

    def __init__(self, init: float, wait: int, mult: float, maximum: float):
        self.init = init
        self.wait = wait
        self.mult = mult
        self.maximum = maximum
        self.value = init
        self.stagnant = 0

    def update(self, improved: bool) -> float:
        """Advance one generation; returns the rate for the next one."""
        if improved:
            self.value = self.init
            self.stagnant = 0
        else:
            self.stagnant += 1
            if self.stagnant >= self.wait:
                self.value = min(self.value * self.mult, self.maximum)
                self.stagnant = 0
        return self.value


def select_elites(rewards: np.ndarray | Iterable[float], percent: float) -> tuple[np.ndarray, float]:
    """Indices of rewards at or above the nearest-rank percentile.

    The threshold is the ceil(percent/100 * len)-th smallest reward; every
    index tied with it is included, so the selection may exceed the nominal
    (100-percent)% count.
    """
    rewards = np.asarray(list(rewards) if not isinstance(rewards, np.ndarray) else rewards,
                         dtype=np.float64)
    if rewards.size == 0:
        raise ValueError("cannot select elites from an empty reward list")
    rank = max(1, math.ceil(percent / 100.0 * rewards.size))
    threshold = float(np.sort(rewards)[rank - 1])
    return np.nonzero(rewards >= threshold)[0], threshold


def _stats_row(s: GenerationStats) -> tuple:
    # The ms column is fixed at 0 so that stats files are byte-identical for
    # identical (config, seed); wall time is reported on the console instead.
    return (s.gen, repr(s.max_all), repr(s.max_gen), repr(s.learn_thr),
            repr(s.survive_thr), repr(s.act_rndness), 0, s.best_g6)


def train(config: TrainConfig, out_dir: str | Path | None = None,
          on_generation: Callable[[GenerationStats], bool | None] | None = None) -> TrainResult:
    """Run the full loop; returns the best reward and a graph attaining it.

    Side effects when ``out_dir`` is given: ``stats.csv`` (flushed every
    generation), ``snapshots/best_<gen>.g6`` and ``.dot`` every
    ``output_best_graph_rate`` generations, and ``policy.ckpt`` on exit
    (including keyboard interrupt). ``on_generation`` may return True to stop
    early.
    """
    rng = np.random.default_rng(config.seed)
    width = config.n * (config.n - 1)
    net = PolicyNet([width, *config.neurons, 2], rng)

    out_path = Path(out_dir) if out_dir is not None else None
    stats_fh = None
    stats_writer = None
    snap_dir = None
    if out_path is not None:
        out_path.mkdir(parents=True, exist_ok=True)
        snap_dir = out_path / "snapshots"
        snap_dir.mkdir(exist_ok=True)
        stats_fh = open(out_path / "stats.csv", "w", newline="")
        stats_writer = csv.writer(stats_fh)
        stats_writer.writerow(STATS_HEADER)
        stats_fh.flush()

    schedule = ActRandomness(config.act_rndness_init, config.act_rndness_wait,
                             config.act_rndness_mult, config.act_rndness_max)
    survivors: list[Trajectory] = []
    best_reward = -math.inf
    best_graph: Graph | None = None
    best_g6 = ""
    stats: list[GenerationStats] = []
    interrupted = False

    pool_exec = ThreadPoolExecutor(config.workers) if config.workers > 1 else None
    map_fn = pool_exec.map if pool_exec is not None else map

    def act_fn(obs_matrix: np.ndarray) -> np.ndarray:
        return sample_actions(net.p1(obs_matrix), rng, schedule.value)

    try:
        for gen in range(1, config.num_generations + 1):
            t0 = time.perf_counter()
            act_used = schedule.value
            fresh = batch_rollout(config.n, config.batch_size, act_fn,
                                  config.compute_reward, map_fn=map_fn)
            pool = fresh + survivors
            rewards = np.array([t.reward for t in pool])

            fresh_max = float(max(t.reward for t in fresh))
            improved = fresh_max > best_reward
            if improved or best_graph is None:
                top = int(np.argmax([t.reward for t in fresh]))
                best_reward = fresh[top].reward
                best_graph = fresh[top].graph()
                best_g6 = to_graph6(best_graph).decode("ascii")

            elite_idx, learn_thr = select_elites(rewards, config.percent_learn)
            elite_idx = [i for i in elite_idx if rewards[i] != MINUS_INF]
            if elite_idx:
                x = np.vstack([pool[i].observation_matrix() for i in elite_idx])
                acts = np.concatenate([pool[i].actions for i in elite_idx])
                net.train_step(x, acts, config.learning_rate)

            surv_idx, survive_thr = select_elites(rewards, config.percent_survive)
            survivors = [pool[i] for i in surv_idx]

            elapsed_ms = (time.perf_counter() - t0) * 1000.0
            row = GenerationStats(gen, best_reward, fresh_max, learn_thr,
                                  survive_thr, act_used, elapsed_ms, best_g6)
            stats.append(row)
            if stats_writer is not None:
                stats_writer.writerow(_stats_row(row))
                stats_fh.flush()
            if config.verbose:
                print(f"gen {gen:4d}  max {best_reward:.6f}  "
                      f"surv {survive_thr:.6f}  learn {learn_thr:.6f}  "
                      f"time {elapsed_ms / 1000.0:.2f}s  rnd {act_used:.4f}")
            if snap_dir is not None and best_graph is not None \
                    and gen % config.output_best_graph_rate == 0:
                (snap_dir / f"best_{gen}.g6").write_bytes(to_graph6(best_graph) + b"\n")
                (snap_dir / f"best_{gen}.dot").write_text(to_dot(best_graph))

            schedule.update(improved)
            if on_generation is not None and on_generation(row):
                break
    except KeyboardInterrupt:
        interrupted = True
    finally:
        if out_path is not None:
            net.save(out_path / "policy.ckpt")
        if stats_fh is not None:
            stats_fh.close()
        if pool_exec is not None:
            pool_exec.shutdown()

    return TrainResult(best_reward if best_graph is not None else -math.inf,
                       best_graph, stats, interrupted)
