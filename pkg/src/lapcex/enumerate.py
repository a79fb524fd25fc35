"""Exhaustive generation of pairwise non-isomorphic connected graphs.

Orderly generation: grow graphs one vertex at a time and keep a child only if
its column-wise upper-triangle bit string is the lexicographic maximum over
all relabelings ("canonical code"). Deleting the last vertex of a canonical
graph leaves a canonical graph, so every isomorphism class is reached exactly
once and no store of seen graphs is needed.

Degree-bounded runs (e.g. subquartic, max_degree=4) additionally prune
partial graphs that provably cannot end up connected: too many components
for the remaining vertices to merge, or a component whose vertices are all
degree-saturated.

The per-parent inner loop (candidate neighbourhood masks x canonicity test)
is compiled with numba when available; a pure-Python twin of the same kernel
is kept both as fallback and as a cross-check target for tests.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .graphs import Graph

MAX_ENUM_VERTICES = 12

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        if args and callable(args[0]):
            return args[0]
        return wrap


@njit(cache=True)
def _is_canonical(rows: np.ndarray, k: int) -> bool:
    """True iff the identity labeling's column code is maximal over relabelings.

    Backtracks over partial labelings; a branch whose next column block falls
    below the identity block can never beat it (prefix dominance), one that
    exceeds it disproves canonicity immediately.
    """
    ident = np.empty(k, np.int64)
    for t in range(k):
        b = 0
        for s in range(t):
            b = (b << 1) | ((rows[s] >> t) & 1)
        ident[t] = b

    perm = np.empty(k, np.int64)
    cand = np.zeros(k, np.int64)
    used = 0
    depth = 0
    while True:
        v = cand[depth]
        if v >= k:
            depth -= 1
            if depth < 0:
                return True
            used &= ~(1 << perm[depth])
            cand[depth] += 1
            continue
        if (used >> v) & 1:
            cand[depth] += 1
            continue
        b = 0
        rv = rows[v]
        for s in range(depth):
            b = (b << 1) | ((rv >> perm[s]) & 1)
        if b > ident[depth]:
            return False
        if b < ident[depth]:
            cand[depth] += 1
            continue
        perm[depth] = v
        used |= 1 << v
        if depth == k - 1:
            used &= ~(1 << v)  # complete automorphism; keep searching
            cand[depth] += 1
        else:
            depth += 1
            cand[depth] = 0


@njit(cache=True)
def _child_masks(rows: np.ndarray, deg: np.ndarray, k: int, n: int, maxdeg: int,
                 out: np.ndarray) -> int:
    """Fill ``out`` with accepted neighbourhood masks for a new vertex k.

    Accepts masks that respect the degree bound, cannot be ruled out for
    connectivity, and whose child graph is canonical. At the final level
    (k+1 == n) only connected children are accepted.
    """
    final = k + 1 == n
    eligible = 0
    for v in range(k):
        if deg[v] < maxdeg:
            eligible |= 1 << v

    child = np.empty(k + 1, np.int64)
    cdeg = np.empty(k + 1, np.int64)
    count = 0
    sub = eligible
    while True:
        pc = 0
        s = sub
        while s:
            s &= s - 1
            pc += 1
        if pc <= maxdeg:
            for v in range(k):
                child[v] = rows[v] | (((sub >> v) & 1) << k)
                cdeg[v] = deg[v] + ((sub >> v) & 1)
            child[k] = sub
            cdeg[k] = pc

            # components of the child, with saturation check per component
            cnt = k + 1
            full = (1 << cnt) - 1
            seen = 0
            comps = 0
            ok = True
            while seen != full:
                rem = full & ~seen
                start = rem & (-rem)
                comp = start
                frontier = start
                while frontier:
                    nxt = 0
                    for v in range(cnt):
                        if (frontier >> v) & 1:
                            nxt |= child[v]
                    frontier = nxt & ~comp
                    comp |= frontier
                seen |= comp
                comps += 1
                if not final:
                    has_free = False
                    for v in range(cnt):
                        if (comp >> v) & 1 and cdeg[v] < maxdeg:
                            has_free = True
                            break
                    if not has_free:
                        ok = False
                        break

            if ok:
                if final:
                    ok = comps == 1
                else:
                    ok = comps - 1 <= (n - cnt) * (maxdeg - 1)
            if ok and _is_canonical(child, cnt):
                out[count] = sub
                count += 1
        if sub == 0:
            break
        sub = (sub - 1) & eligible
    return count


def _is_canonical_py(rows: list[int], k: int) -> bool:
    """Pure-Python twin of :func:`_is_canonical` (same algorithm)."""
    ident = []
    for t in range(k):
        b = 0
        for s in range(t):
            b = (b << 1) | ((rows[s] >> t) & 1)
        ident.append(b)

    def search(depth: int, perm: list[int], used: int) -> bool:
        if depth == k:
            return True
        for v in range(k):
            if (used >> v) & 1:
                continue
            b = 0
            rv = rows[v]
            for s in range(depth):
                b = (b << 1) | ((rv >> perm[s]) & 1)
            if b > ident[depth]:
                return False
            if b == ident[depth]:
                perm.append(v)
                if not search(depth + 1, perm, used | (1 << v)):
                    return False
                perm.pop()
        return True

    return search(0, [], 0)


def _child_masks_py(rows: list[int], deg: list[int], k: int, n: int,
                    maxdeg: int) -> list[int]:
    """Pure-Python twin of :func:`_child_masks`."""
    final = k + 1 == n
    eligible = 0
    for v in range(k):
        if deg[v] < maxdeg:
            eligible |= 1 << v

    accepted = []
    sub = eligible
    while True:
        if sub.bit_count() <= maxdeg:
            child = [rows[v] | (((sub >> v) & 1) << k) for v in range(k)] + [sub]
            cdeg = [deg[v] + ((sub >> v) & 1) for v in range(k)] + [sub.bit_count()]
            cnt = k + 1
            full = (1 << cnt) - 1
            seen = 0
            comps = 0
            ok = True
            while seen != full:
                rem = full & ~seen
                start = rem & (-rem)
                comp = frontier = start
                while frontier:
                    nxt = 0
                    for v in range(cnt):
                        if (frontier >> v) & 1:
                            nxt |= child[v]
                    frontier = nxt & ~comp
                    comp |= frontier
                seen |= comp
                comps += 1
                if not final and all(
                    cdeg[v] >= maxdeg for v in range(cnt) if (comp >> v) & 1
                ):
                    ok = False
                    break
            if ok:
                ok = comps == 1 if final else comps - 1 <= (n - cnt) * (maxdeg - 1)
            if ok and _is_canonical_py(child, cnt):
                accepted.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & eligible
    return accepted


def enumerate_connected_rows(n: int, max_degree: int | None = None,
                             jit: bool | None = None) -> Iterator[tuple[int, ...]]:
    """Stream bit-packed adjacency row tuples, one per isomorphism class.

    Lighter-weight sibling of :func:`enumerate_connected` for bulk scanning.
    """
    if not 2 <= n <= MAX_ENUM_VERTICES:
        raise ValueError(
            f"built-in enumeration supports 2 <= n <= {MAX_ENUM_VERTICES}, got {n}"
        )
    maxdeg = n - 1 if max_degree is None else max_degree
    if maxdeg < 1:
        raise ValueError(f"max_degree must be >= 1, got {max_degree}")
    maxdeg = min(maxdeg, n - 1)
    use_jit = _HAVE_NUMBA if jit is None else jit

    if use_jit:
        arr = np.zeros(n, np.int64)
        deg = np.zeros(n, np.int64)
        bufs = [np.empty(1 << k, np.int64) for k in range(n)]

        def rec(k: int) -> Iterator[tuple[int, ...]]:
            cnt = _child_masks(arr, deg, k, n, maxdeg, bufs[k])
            for idx in range(cnt):
                sub = int(bufs[k][idx])
                if k + 1 == n:
                    yield tuple(
                        int(arr[v]) | (((sub >> v) & 1) << k) for v in range(k)
                    ) + (sub,)
                else:
                    arr[k] = sub
                    deg[k] = sub.bit_count()
                    for v in range(k):
                        if (sub >> v) & 1:
                            arr[v] |= 1 << k
                            deg[v] += 1
                    yield from rec(k + 1)
                    for v in range(k):
                        if (sub >> v) & 1:
                            arr[v] &= ~(1 << k)
                            deg[v] -= 1
                    arr[k] = 0
                    deg[k] = 0

        yield from rec(1)
    else:
        def rec_py(rows: list[int], deg: list[int], k: int) -> Iterator[tuple[int, ...]]:
            for sub in _child_masks_py(rows, deg, k, n, maxdeg):
                child = [rows[v] | (((sub >> v) & 1) << k) for v in range(k)] + [sub]
                if k + 1 == n:
                    yield tuple(child)
                else:
                    cdeg = [deg[v] + ((sub >> v) & 1) for v in range(k)]
                    cdeg.append(sub.bit_count())
                    yield from rec_py(child, cdeg, k + 1)

        yield from rec_py([0], [0], 1)


def enumerate_connected(n: int, max_degree: int | None = None) -> Iterator[Graph]:
    """All connected graphs of order n with maximum degree <= max_degree,
    exactly one representative per isomorphism class."""
    for rows in enumerate_connected_rows(n, max_degree):
        yield Graph(n, rows)
