"""Feed-forward policy: observation in, probability of adding the edge out.

A small ReLU MLP with two output scores (skip / add), trained by one
adaptive-moment step at a time on the cross-entropy between elite actions
and the network's distribution. Everything is float64 numpy; given the same
seed and batch sequence the parameters evolve bit-identically.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .env import Observation

CHECKPOINT_MAGIC = b"LXPN"
CHECKPOINT_VERSION = 1

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


@dataclass(frozen=True)
class ActionDistribution:
    """Distribution over the two actions; p1 is the probability of 'add'."""

    p1: float

    @property
    def p0(self) -> float:
        return 1.0 - self.p1


class PolicyNet:
    """MLP with layer widths [n(n-1), *hidden, 2] and ReLU hidden units."""

    def __init__(self, layer_sizes: list[int], rng: np.random.Generator | None = None):
        if len(layer_sizes) < 2 or layer_sizes[-1] != 2:
            raise ValueError("layer_sizes must end with the two action scores")
        self.layer_sizes = [int(s) for s in layer_sizes]
        self.weights: list[np.ndarray] = []
        self.biases: list[np.ndarray] = []
        rng = rng or np.random.default_rng()
        for fan_in, fan_out in zip(self.layer_sizes, self.layer_sizes[1:]):
            limit = np.sqrt(6.0 / (fan_in + fan_out))
            self.weights.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)))
            self.biases.append(np.zeros(fan_out))
        self._m = [np.zeros_like(w) for w in self.weights + self.biases]
        self._v = [np.zeros_like(w) for w in self.weights + self.biases]
        self._step = 0

    @property
    def input_width(self) -> int:
        return self.layer_sizes[0]

    def _logits(self, x: np.ndarray) -> tuple[np.ndarray, list[np.ndarray]]:
        """Returns output scores and pre-activation values per hidden layer."""
        pre = []
        h = x
        last = len(self.weights) - 1
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            z = h @ w + b
            if i < last:
                pre.append(z)
                h = np.maximum(z, 0.0)
            else:
                h = z
        return h, pre

    def forward(self, x: np.ndarray) -> np.ndarray:
        """Softmax action probabilities, shape (batch, 2)."""
        x = np.atleast_2d(np.asarray(x, dtype=np.float64))
        if x.shape[1] != self.input_width:
            raise ValueError(
                f"observation width {x.shape[1]} != network input {self.input_width}"
            )
        z, _ = self._logits(x)
        z = z - z.max(axis=1, keepdims=True)
        e = np.exp(z)
        return e / e.sum(axis=1, keepdims=True)

    def p1(self, x: np.ndarray) -> np.ndarray:
        return self.forward(x)[:, 1]

    def distribution(self, obs: Observation) -> ActionDistribution:
        return ActionDistribution(float(self.p1(obs.vector[None, :].astype(np.float64))[0]))

    def train_step(self, x: np.ndarray, actions: np.ndarray, learning_rate: float) -> float:
        """One adaptive-moment step on mean cross-entropy; returns the
        pre-step mean loss."""
        x = np.asarray(x, dtype=np.float64)
        actions = np.asarray(actions, dtype=np.int64)
        if x.ndim != 2 or x.shape[1] != self.input_width:
            raise ValueError("bad observation batch shape")
        if len(actions) != len(x) or len(x) == 0:
            raise ValueError("observations and actions must be equal-length, non-empty")

        z, pre = self._logits(x)
        zmax = z.max(axis=1, keepdims=True)
        lse = zmax[:, 0] + np.log(np.exp(z - zmax).sum(axis=1))
        loss = float(np.mean(lse - z[np.arange(len(x)), actions]))
        if not np.isfinite(loss):
            raise RuntimeError(f"non-finite cross-entropy loss: {loss}")

        probs = np.exp(z - lse[:, None])
        dz = probs
        dz[np.arange(len(x)), actions] -= 1.0
        dz /= len(x)

        grads_w = []
        grads_b = []
        acts = [x] + [np.maximum(p, 0.0) for p in pre]
        delta = dz
        for i in range(len(self.weights) - 1, -1, -1):
            grads_w.append(acts[i].T @ delta)
            grads_b.append(delta.sum(axis=0))
            if i > 0:
                delta = (delta @ self.weights[i].T) * (pre[i - 1] > 0.0)
        grads_w.reverse()
        grads_b.reverse()

        self._step += 1
        params = self.weights + self.biases
        grads = grads_w + grads_b
        bc1 = 1.0 - ADAM_BETA1**self._step
        bc2 = 1.0 - ADAM_BETA2**self._step
        for p, g, m, v in zip(params, grads, self._m, self._v):
            if not np.isfinite(g).all():
                raise RuntimeError("non-finite gradient")
            m *= ADAM_BETA1
            m += (1.0 - ADAM_BETA1) * g
            v *= ADAM_BETA2
            v += (1.0 - ADAM_BETA2) * g * g
            p -= learning_rate * (m / bc1) / (np.sqrt(v / bc2) + ADAM_EPS)
            if not np.isfinite(p).all():
                raise RuntimeError("non-finite parameter after update")
        return loss

    # -- checkpoint format: magic, version, layer count, layer sizes (all
    # little-endian uint32), then per layer the weight matrix (row-major)
    # followed by the bias vector as little-endian float64. Optimizer state
    # is not persisted.

    def save(self, path: str | Path):
        with open(path, "wb") as fh:
            fh.write(CHECKPOINT_MAGIC)
            fh.write(struct.pack("<II", CHECKPOINT_VERSION, len(self.layer_sizes)))
            fh.write(struct.pack(f"<{len(self.layer_sizes)}I", *self.layer_sizes))
            for w, b in zip(self.weights, self.biases):
                fh.write(w.astype("<f8").tobytes())
                fh.write(b.astype("<f8").tobytes())

    @classmethod
    def load(cls, path: str | Path) -> "PolicyNet":
        with open(path, "rb") as fh:
            if fh.read(4) != CHECKPOINT_MAGIC:
                raise ValueError(f"{path}: not a policy checkpoint")
            version, n_layers = struct.unpack("<II", fh.read(8))
            if version != CHECKPOINT_VERSION:
                raise ValueError(f"{path}: unsupported checkpoint version {version}")
            sizes = list(struct.unpack(f"<{n_layers}I", fh.read(4 * n_layers)))
            net = cls.__new__(cls)
            net.layer_sizes = sizes
            net.weights = []
            net.biases = []
            for fan_in, fan_out in zip(sizes, sizes[1:]):
                w = np.frombuffer(fh.read(8 * fan_in * fan_out), dtype="<f8")
                net.weights.append(w.reshape(fan_in, fan_out).copy())
                net.biases.append(np.frombuffer(fh.read(8 * fan_out), dtype="<f8").copy())
            rest = fh.read()
            if rest:
                raise ValueError(f"{path}: {len(rest)} trailing bytes")
        net._m = [np.zeros_like(w) for w in net.weights + net.biases]
        net._v = [np.zeros_like(w) for w in net.weights + net.biases]
        net._step = 0
        return net


def sample_action(dist: ActionDistribution, rng: np.random.Generator,
                  act_rndness: float = 0.0) -> int:
    """Sample 0/1: uniform with probability act_rndness, else Bernoulli(p1)."""
    if not 0.0 <= act_rndness <= 1.0:
        raise ValueError("act_rndness must lie in [0, 1]")
    if rng.random() < act_rndness:
        return int(rng.integers(0, 2))
    return int(rng.random() < dist.p1)


def sample_actions(p1: np.ndarray, rng: np.random.Generator,
                   act_rndness: float = 0.0) -> np.ndarray:
    """Vectorized sampler for a batch of p1 values.

    Draws a fixed number of random values per call so the RNG stream does not
    depend on outcomes; this keeps batched runs reproducible.
    """
    p1 = np.asarray(p1, dtype=np.float64)
    override = rng.random(p1.shape) < act_rndness
    uniform = rng.integers(0, 2, size=p1.shape).astype(np.uint8)
    bern = (rng.random(p1.shape) < p1).astype(np.uint8)
    return np.where(override, uniform, bern).astype(np.uint8)
