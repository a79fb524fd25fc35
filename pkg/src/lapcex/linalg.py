"""Laplacian matrices and symmetric eigenvalue computation.

Two routes to a spectrum are kept on purpose:

* :func:`sym_eigenvalues` -- cyclic Jacobi sweeps, self-contained and
  convergence-checked; the reference implementation and test oracle.
* :func:`laplacian_spectrum` -- LAPACK via ``numpy.linalg.eigvalsh``; the
  production path for training loops and bulk scans, where throughput
  dominates. Tests assert the two agree.
"""

from __future__ import annotations

import math

import numpy as np

from .graphs import Graph, degrees


class ConvergenceError(RuntimeError):
    """Jacobi sweeps did not reach the requested off-diagonal tolerance."""


def _off_norm(a: np.ndarray) -> float:
    # computed directly from the off-diagonal entries; the algebraically
    # equivalent ||A||_F^2 - ||diag||^2 cancels catastrophically near
    # convergence and would floor around sqrt(eps)*||A||
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def laplacian(g: Graph) -> np.ndarray:
    """Laplacian matrix L = D - A as float64; row sums are zero."""
    a = g.adjacency_matrix().astype(np.float64)
    return np.diag(np.array(degrees(g), dtype=np.float64)) - a


def sym_eigenvalues(m: np.ndarray, tol: float = 1e-12, max_sweeps: int = 50) -> np.ndarray:
    """Eigenvalues of a symmetric matrix, non-decreasing, via cyclic Jacobi.

    ``tol`` bounds the off-diagonal Frobenius norm relative to the full
    Frobenius norm of the input; sweeps are row-cyclic. Raises
    :class:`ConvergenceError` if the bound is not met within ``max_sweeps``
    sweeps rather than returning a silently inaccurate spectrum.
    """
    a = np.array(m, dtype=np.float64, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(a).max())):
        raise ValueError("matrix is not symmetric")
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = a.shape[0]
    if n == 1:
        return a[0, :1].copy()

    threshold = tol * max(np.linalg.norm(a), np.finfo(np.float64).tiny)
    for _ in range(max_sweeps):
        if _off_norm(a) < threshold:
            return np.sort(np.diag(a))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                with np.errstate(over="ignore"):
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = a[q, p] = 0.0
    off = _off_norm(a)
    if off < threshold:
        return np.sort(np.diag(a))
    raise ConvergenceError(
        f"Jacobi sweeps exhausted ({max_sweeps}) with off-diagonal norm {off:.3e}"
    )


def laplacian_spectrum(g: Graph) -> np.ndarray:
    """Laplacian eigenvalues, non-decreasing (LAPACK path)."""
    return np.linalg.eigvalsh(laplacian(g))


def lap_spectral_radius(g: Graph) -> float:
    """Largest Laplacian eigenvalue; satisfies 0 <= value <= n."""
    return float(laplacian_spectrum(g)[-1])


def batch_lap_spectral_radius(laplacians: np.ndarray) -> np.ndarray:
    """Largest eigenvalue per matrix of a (batch, n, n) symmetric stack."""
    return np.linalg.eigvalsh(laplacians)[:, -1]
