"""Figure rendering for training runs and scans.

Matplotlib stays out of the core modules; the CLI calls into here to drop
PNG figures next to the CSV outputs: reward evolution curves, drawings of
best graphs, and per-bound scan summaries.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .bounds import MINUS_INF
from .graphs import Graph
from .trainer import GenerationStats


def spring_layout(g: Graph, iterations: int = 120, seed: int = 0) -> np.ndarray:
    """Deterministic force-directed layout, (n, 2) coordinates in [-1, 1]."""
    rng = np.random.default_rng(seed)
    pos = rng.uniform(-1.0, 1.0, size=(g.n, 2))
    adj = g.adjacency_matrix().astype(np.float64)
    k = 1.0 / np.sqrt(g.n)
    t = 0.15
    for _ in range(iterations):
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.linalg.norm(delta, axis=2)
        np.fill_diagonal(dist, 1.0)
        repel = k * k / dist**2
        attract = adj * dist / k
        force = ((repel - attract)[:, :, None] * delta / dist[:, :, None]).sum(axis=1)
        norm = np.linalg.norm(force, axis=1, keepdims=True)
        norm[norm < 1e-12] = 1e-12
        pos += force / norm * min(t, 0.15)
        t *= 0.97
    pos -= pos.mean(axis=0)
    scale = np.abs(pos).max()
    return pos / scale if scale > 0 else pos


def save_graph_drawing(g: Graph, path: str | Path, title: str | None = None):
    pos = spring_layout(g)
    fig, ax = plt.subplots(figsize=(4, 4))
    for i, j in g.edges():
        ax.plot([pos[i, 0], pos[j, 0]], [pos[i, 1], pos[j, 1]],
                color="steelblue", lw=1.2, zorder=1)
    ax.scatter(pos[:, 0], pos[:, 1], s=160, color="white",
               edgecolors="black", zorder=2)
    for v in range(g.n):
        ax.annotate(str(v), pos[v], ha="center", va="center", fontsize=8, zorder=3)
    if title:
        ax.set_title(title, fontsize=10)
    ax.set_axis_off()
    ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_reward_evolution(stats: Sequence[GenerationStats], path: str | Path,
                          title: str | None = None):
    """Best / learning-threshold / survivor-threshold rewards per generation;
    disconnected-sentinel values are masked out."""
    gens = np.array([s.gen for s in stats])
    series = {
        "max reward": np.array([s.max_all for s in stats]),
        "survivor threshold": np.array([s.survive_thr for s in stats]),
        "learning threshold": np.array([s.learn_thr for s in stats]),
    }
    fig, ax = plt.subplots(figsize=(7, 4))
    for label, values in series.items():
        masked = np.where(values == MINUS_INF, np.nan, values)
        ax.plot(gens, masked, label=label, lw=1.0)
    ax.axhline(0.0, color="gray", lw=0.6, ls="--")
    ax.set_xlabel("generation")
    ax.set_ylabel("reward")
    if title:
        ax.set_title(title, fontsize=10)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_scan_summary(max_rewards: Mapping[int, float], path: str | Path,
                      title: str | None = None):
    """Bar chart of the best reward seen per bound; positive bars (violations)
    are highlighted."""
    ids = sorted(max_rewards)
    values = np.array([max_rewards[i] for i in ids], dtype=np.float64)
    values = np.where(values == MINUS_INF, np.nan, values)
    colors = ["crimson" if v > 0 else "steelblue" for v in values]
    fig, ax = plt.subplots(figsize=(10, 4))
    ax.bar([str(i) for i in ids], values, color=colors)
    ax.axhline(0.0, color="black", lw=0.8)
    ax.set_xlabel("bound id")
    ax.set_ylabel("max reward over family")
    if len(ids) > 24:
        ax.tick_params(axis="x", labelsize=6, rotation=90)
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
