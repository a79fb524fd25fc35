"""Counterexample search for conjectured Laplacian spectral-radius bounds.

A cross-entropy construction loop builds simple graphs edge by edge to
maximise mu(G) - bound(G); a positive best reward is a counterexample. The
68 conjectured vertex-max / edge-max bounds ship in :mod:`lapcex.bounds`,
and :mod:`lapcex.search` runs them exhaustively over small-graph and
bounded-degree families or external graph6 streams.
"""

from .bounds import MINUS_INF, BoundSpec, get_bound, registry, reward, reward_fn, rhs
from .enumerate import enumerate_connected
from .graphs import (Graph, average_degrees, canonical_form, degrees,
                     from_edge_bits, from_graph6, generate_star,
                     generate_windmill, num_components, to_graph6)
from .linalg import lap_spectral_radius, laplacian, laplacian_spectrum, sym_eigenvalues
from .search import check_single, exhaustive_check, stream_check
from .trainer import TrainConfig, TrainResult, train

__version__ = "0.1.0"

__all__ = [
    "MINUS_INF", "BoundSpec", "Graph", "TrainConfig", "TrainResult",
    "average_degrees", "canonical_form", "check_single", "degrees",
    "enumerate_connected", "exhaustive_check", "from_edge_bits", "from_graph6",
    "generate_star", "generate_windmill", "get_bound", "lap_spectral_radius",
    "laplacian", "laplacian_spectrum", "num_components", "registry", "reward",
    "reward_fn", "rhs", "stream_check", "sym_eigenvalues", "to_graph6", "train",
]
