"""Simple-graph container, degree invariants, graph6 codec and generators.

Graphs are immutable: the adjacency matrix is bit-packed one row per Python
int (bit j of ``rows[i]`` set iff vertices i and j are adjacent), which keeps
edge queries O(1) and row iteration O(n) for the orders used here (n <= 64).

Two pair orderings appear in this package and must never be mixed silently:

* row-wise upper triangle (0,1),(0,2),...,(0,n-1),(1,2),...,(n-2,n-1) --
  the construction-environment order used by :func:`from_edge_bits`;
* column-wise upper triangle (0,1),(0,2),(1,2),(0,3),... -- the graph6
  wire order used by :func:`to_graph6` / :func:`from_graph6`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_VERTICES = 64


class Graph6ParseError(ValueError):
    """Raised for malformed graph6 input."""


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..n-1 with bit-packed adjacency."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if len(self.rows) != self.n:
            raise ValueError("adjacency row count does not match n")
        mask = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~mask:
                raise ValueError(f"row {i} has bits beyond vertex {self.n - 1}")
            if row >> i & 1:
                raise ValueError(f"self-loop at vertex {i}")
            for j in range(i):
                if (row >> j & 1) != (self.rows[j] >> i & 1):
                    raise ValueError(f"adjacency not symmetric at ({i},{j})")

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def neighbors(self, v: int) -> list[int]:
        row = self.rows[v]
        return [u for u in range(self.n) if row >> u & 1]

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (i, j) with i < j, in row-wise order."""
        out = []
        for i in range(self.n):
            row = self.rows[i] >> (i + 1)
            j = i + 1
            while row:
                if row & 1:
                    out.append((i, j))
                row >>= 1
                j += 1
        return out

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for i, j in self.edges():
            a[i, j] = a[j, i] = 1
        return a


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    rows = [0] * n
    for i, j in edges:
        if i == j:
            raise ValueError(f"self-loop ({i},{j})")
        rows[i] |= 1 << j
        rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def pair_index_row_wise(n: int, i: int, j: int) -> int:
    """Index of pair (i,j), i<j, in row-wise upper-triangle order."""
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def from_edge_bits(n: int, bits: Sequence[int]) -> Graph:
    """Build a graph from its row-wise upper-triangle 0/1 edge list."""
    if len(bits) != num_pairs(n):
        raise ValueError(
            f"expected {num_pairs(n)} edge bits for n={n}, got {len(bits)}"
        )
    rows = [0] * n
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            b = int(bits[k])
            if b not in (0, 1):
                raise ValueError(f"edge bit {k} is {bits[k]!r}, expected 0 or 1")
            if b:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def to_edge_bits(g: Graph) -> np.ndarray:
    """Row-wise upper-triangle 0/1 vector; inverse of :func:`from_edge_bits`."""
    bits = np.zeros(num_pairs(g.n), dtype=np.uint8)
    k = 0
    for i in range(g.n):
        row = g.rows[i]
        for j in range(i + 1, g.n):
            bits[k] = row >> j & 1
            k += 1
    return bits


def degrees(g: Graph) -> list[int]:
    """Per-vertex degree."""
    return [row.bit_count() for row in g.rows]


def average_degrees(g: Graph) -> list[float]:
    """Per-vertex average degree of neighbours.

    Undefined (0/0) on isolated vertices; callers must screen disconnected
    graphs first, which is what the reward convention does.
    """
    deg = degrees(g)
    out = []
    for v in range(g.n):
        if deg[v] == 0:
            raise ValueError(f"average neighbour degree undefined: vertex {v} is isolated")
        out.append(sum(deg[u] for u in g.neighbors(v)) / deg[v])
    return out


def degree_profile(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """(d, m) arrays: degrees and average neighbour degrees, as float64."""
    d = np.array(degrees(g), dtype=np.float64)
    m = np.array(average_degrees(g), dtype=np.float64)
    return d, m


def num_components(g: Graph) -> int:
    """Number of connected components (bitmask BFS)."""
    seen = 0
    full = (1 << g.n) - 1
    count = 0
    while seen != full:
        start = (~seen & full) & -(~seen & full)  # lowest unseen vertex bit
        frontier = start
        comp = start
        while frontier:
            nxt = 0
            f = frontier
            while f:
                v = f & -f
                nxt |= g.rows[v.bit_length() - 1]
                f ^= v
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        count += 1
    return count


def is_connected(g: Graph) -> bool:
    return num_components(g) == 1


# ---------------------------------------------------------------------------
# graph6 codec (column-wise upper-triangle bit order, 6 bits per byte + 63)
# ---------------------------------------------------------------------------

def to_graph6(g: Graph) -> bytes:
    if not 1 <= g.n <= 62:
        raise ValueError(f"graph6 single-byte size form needs 1 <= n <= 62, got {g.n}")
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(g.rows[i] >> j & 1)
    while len(bits) % 6:
        bits.append(0)
    out = bytearray([g.n + 63])
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = val << 1 | b
        out.append(val + 63)
    return bytes(out)


def from_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise Graph6ParseError("empty graph6 string")
    n = data[0] - 63
    if not 1 <= n <= 62:
        raise Graph6ParseError(f"unsupported graph6 size byte {data[0]!r}")
    need = (num_pairs(n) + 5) // 6
    payload = data[1:]
    if len(payload) != need:
        raise Graph6ParseError(
            f"graph6 payload for n={n} needs {need} bytes, got {len(payload)}"
        )
    bits = []
    for byte in payload:
        if not 63 <= byte <= 126:
            raise Graph6ParseError(f"invalid graph6 byte {byte}")
        val = byte - 63
        bits.extend(val >> s & 1 for s in range(5, -1, -1))
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if any(bits[k:]):
        raise Graph6ParseError("nonzero padding bits in graph6 payload")
    return Graph(n, tuple(rows))


def read_graph6_lines(lines: Iterable[bytes | str]) -> Iterator[Graph]:
    """Parse a newline-delimited graph6 stream, skipping blank lines."""
    for line in lines:
        if isinstance(line, bytes):
            line = line.strip()
        else:
            line = line.strip().encode("ascii")
        if line:
            yield from_graph6(line)


def to_dot(g: Graph, name: str = "G") -> str:
    """Graphviz DOT text for an undirected graph."""
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v};" for v in range(g.n))
    lines.extend(f"  {i} -- {j};" for i, j in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Deterministic generators
# ---------------------------------------------------------------------------

def generate_star(n: int) -> Graph:
    """Star K_{1,n-1} with centre 0."""
    if n < 2:
        raise ValueError(f"star needs n >= 2, got {n}")
    return from_edges(n, [(0, v) for v in range(1, n)])


def generate_windmill(k: int) -> Graph:
    """k triangles sharing vertex 0 (friendship graph, order 2k+1)."""
    if k < 1:
        raise ValueError(f"windmill needs k >= 1, got {k}")
    edges = []
    for t in range(k):
        a, b = 1 + 2 * t, 2 + 2 * t
        edges += [(0, a), (0, b), (a, b)]
    return from_edges(2 * k + 1, edges)


def generate_complete(n: int) -> Graph:
    return from_edges(n, list(combinations(range(n), 2)))


def generate_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def generate_path(n: int) -> Graph:
    return from_edges(n, [(v, v + 1) for v in range(n - 1)])


# ---------------------------------------------------------------------------
# Canonical form (degree/neighbourhood refinement + backtracking)
# ---------------------------------------------------------------------------

def _refine_colors(g: Graph) -> list[int]:
    """Iterated neighbour-colour refinement; returns a stable colouring."""
    colors = degrees(g)
    while True:
        sig = [
            (colors[v], tuple(sorted(colors[u] for u in g.neighbors(v))))
            for v in range(g.n)
        ]
        ranking = {s: r for r, s in enumerate(sorted(set(sig)))}
        new = [ranking[s] for s in sig]
        if new == colors:
            return colors
        colors = new


def canonical_form(g: Graph) -> bytes:
    """Canonical isomorphism key for small graphs.

    Lexicographically smallest column-wise upper-triangle bit string over all
    labelings consistent with the refined colouring (cells in colour order,
    backtracking over orderings inside each cell). Column-wise order makes the
    first C(k,2) bits depend only on the first k placed vertices, so partial
    strings prune against the best complete one. Exact: equal keys iff
    isomorphic; meant for dedup at built-in enumerator orders.
    """
    colors = _refine_colors(g)
    order_of = sorted(range(g.n), key=lambda v: colors[v])
    cell_of_pos = [colors[v] for v in order_of]

    best: list[int] | None = None
    placed: list[int] = []
    bits: list[int] = []

    def place(t: int):
        nonlocal best
        if t == g.n:
            if best is None or bits < best:
                best = bits.copy()
            return
        want = cell_of_pos[t]
        for v in range(g.n):
            if colors[v] != want or v in placed:
                continue
            col = [g.rows[v] >> u & 1 for u in placed]
            bits.extend(col)
            if best is None or bits <= best[: len(bits)]:
                placed.append(v)
                place(t + 1)
                placed.pop()
            del bits[len(bits) - len(col):]

    place(0)
    assert best is not None
    return bytes(best)


def automorphism_count(g: Graph) -> int:
    """|Aut(g)| by backtracking over colour-respecting vertex images."""
    colors = _refine_colors(g)
    image: list[int] = []
    used = [False] * g.n
    count = 0

    def assign(v: int):
        nonlocal count
        if v == g.n:
            count += 1
            return
        for w in range(g.n):
            if used[w] or colors[w] != colors[v]:
                continue
            if any((g.rows[v] >> u & 1) != (g.rows[w] >> image[u] & 1) for u in range(v)):
                continue
            used[w] = True
            image.append(w)
            assign(v + 1)
            image.pop()
            used[w] = False

    assign(0)
    return count
