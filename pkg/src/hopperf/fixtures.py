"""Bundled test networks and topology generators."""
from __future__ import annotations

import hashlib

import numpy as np

from .graph import Network
from .regions import RegionSpec

__all__ = [
    "ANTEL_EDGES",
    "ANTEL_TERMINALS",
    "ANTEL_SETS",
    "ANTEL_FINES",
    "antel_fixture",
    "antel_region_spec",
    "antel_edge_hash",
    "generate_grid",
    "grid_node",
    "triangular_reliabilities",
    "generate_preferential_extension",
]

# ANTEL reduced transport network: edge id -> (node, node)
ANTEL_EDGES = (
    (11, 10), (11, 14), (13, 15), (4, 3), (4, 7), (8, 7), (8, 12), (12, 15),
    (15, 14), (8, 11), (6, 10), (4, 9), (9, 13), (15, 18), (18, 17), (14, 17),
    (9, 8), (7, 6), (10, 16), (16, 19), (20, 19), (21, 20), (17, 21), (3, 2),
    (2, 1), (1, 0), (1, 5), (0, 5), (0, 6), (5, 6), (18, 21), (12, 13),
)
ANTEL_NODES = 22
ANTEL_TERMINALS = (4, 14)

# conditioning sets per region for thresholds (5, 7) with a separate
# disconnected region
ANTEL_SETS = {
    "pathsets": [
        [[4, 5, 9, 1], [11, 12, 2, 8]],
        [[11, 12, 2, 13, 14, 15]],
        [[4, 17, 10, 18, 19, 20, 21, 22, 15]],
        [],
    ],
    "cutsets": [
        [],
        [[1, 8]],
        [[1, 8, 13]],
        [[3, 4, 11], [1, 8, 15]],
    ],
}

# fines per region (up to 5 hops, 6-7, above 7, disconnected) for each scenario
ANTEL_FINES = {
    0.90: (0.0, 5.0, 10.0, 20.0),
    0.95: (0.0, 30.0, 60.0, 120.0),
    0.99: (0.0, 1000.0, 2000.0, 4000.0),
}


def antel_fixture(reliability: float = 0.9) -> tuple[Network, dict]:
    """The 22-node, 32-edge ANTEL network (terminals 4 and 14) and its bundled sets."""
    net = Network(ANTEL_NODES, [(a, b, reliability) for a, b in ANTEL_EDGES], ANTEL_TERMINALS)
    sets = {k: [list(map(list, fam)) for fam in v] for k, v in ANTEL_SETS.items()}
    return net, sets


def antel_region_spec(reliability: float = 0.9, fines=None) -> RegionSpec:
    if fines is None:
        fines = ANTEL_FINES[min(ANTEL_FINES, key=lambda r: abs(r - reliability))]
    return RegionSpec((5, 7), tuple(fines))


def antel_edge_hash() -> str:
    text = ";".join(f"{a}-{b}" for a, b in ANTEL_EDGES)
    return hashlib.sha256(text.encode()).hexdigest()


def grid_node(side: int, x: int, y: int) -> int:
    """Node id of grid coordinate (x, y), both counted from zero."""
    if not (0 <= x < side and 0 <= y < side):
        raise ValueError(f"({x}, {y}) is outside a {side}x{side} grid")
    return y * side + x


def triangular_reliabilities(count: int, rng: np.random.Generator, low: float = 0.985,
                             mode: float = 0.99, high: float = 0.995) -> np.ndarray:
    return rng.triangular(low, mode, high, size=count)


def generate_grid(side: int, reliability=0.99, terminals=None) -> Network:
    """``side x side`` grid graph with ``2 * side * (side - 1)`` edges.

    ``reliability`` is a scalar or one value per edge. Edges are listed
    row by row: horizontal edges of a row, then the vertical edges below it.
    Terminals default to opposite corners.
    """
    if side < 2:
        raise ValueError("grid side must be >= 2")
    pairs = []
    for y in range(side):
        for x in range(side - 1):
            pairs.append((grid_node(side, x, y), grid_node(side, x + 1, y)))
        if y < side - 1:
            for x in range(side):
                pairs.append((grid_node(side, x, y), grid_node(side, x, y + 1)))
    rel = np.broadcast_to(np.asarray(reliability, dtype=float), (len(pairs),))
    if terminals is None:
        terminals = (0, side * side - 1)
    return Network(side * side, [(a, b, r) for (a, b), r in zip(pairs, rel)], terminals)


def generate_preferential_extension(base: Network, extra_nodes: int, edges_per_node: int,
                                    seed: int = 0, reliability: float | None = None) -> Network:
    """Grow ``base`` by preferential attachment.

    Each new node links to ``edges_per_node`` distinct existing nodes, picked
    with probability proportional to their current degree. New edges get
    ``reliability`` (default: the mean reliability of ``base``).
    """
    if edges_per_node < 1:
        raise ValueError("edges_per_node must be >= 1")
    if extra_nodes < 0:
        raise ValueError("extra_nodes must be >= 0")
    if edges_per_node > base.node_count:
        raise ValueError("edges_per_node exceeds the number of base nodes")
    rng = np.random.default_rng(seed)
    if reliability is None:
        reliability = float(base.reliability.mean())
    edges = base.edges
    degree = np.bincount(
        np.concatenate([base.endpoint_a, base.endpoint_b]), minlength=base.node_count
    ).astype(float)
    if degree.sum() == 0:
        raise ValueError("base network has no edges to attach to")
    n = base.node_count
    for _ in range(extra_nodes):
        weights = degree.copy()
        targets = []
        for _ in range(edges_per_node):
            pick = int(rng.choice(n, p=weights / weights.sum()))
            targets.append(pick)
            weights[pick] = 0.0
        for t in targets:
            edges.append((n, t, reliability))
            degree[t] += 1
        degree = np.append(degree, edges_per_node)
        n += 1
    return Network(n, edges, base.terminals)
