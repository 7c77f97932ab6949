"""Networks with independently failing edges, and hop distances on their partial graphs."""
from __future__ import annotations

import math
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from ._kernels import INF_DIST, UNBOUNDED

__all__ = [
    "Network",
    "INF_DIST",
    "UNBOUNDED",
    "as_active",
    "bfs_distances",
    "max_terminal_distance",
    "is_d_connected",
]


class Network:
    """Undirected multigraph with per-edge reliabilities and a terminal set.

    Edge ``e`` is ``(endpoint_a[e], endpoint_b[e])`` and operates with
    probability ``reliability[e]``. Edge ids are list positions.
    """

    def __init__(self, node_count: int, edges: Iterable[Sequence], terminals: Iterable[int]):
        edges = [tuple(e) for e in edges]
        a = np.array([int(e[0]) for e in edges], dtype=np.int64)
        b = np.array([int(e[1]) for e in edges], dtype=np.int64)
        r = np.array([float(e[2]) for e in edges], dtype=np.float64)
        terms = tuple(sorted({int(k) for k in terminals}))
        n = int(node_count)
        if n < 1:
            raise ValueError(f"node_count must be positive, got {n}")
        if len(edges) and (a.min() < 0 or b.min() < 0 or a.max() >= n or b.max() >= n):
            raise ValueError("edge endpoint outside [0, node_count)")
        loops = np.flatnonzero(a == b)
        if loops.size:
            raise ValueError(f"self-loop at edge {int(loops[0])}")
        bad = np.flatnonzero((r <= 0.0) | (r >= 1.0))
        if bad.size:
            e = int(bad[0])
            raise ValueError(f"reliability of edge {e} must lie in (0, 1), got {r[e]}")
        if len(terms) < 2:
            raise ValueError("need at least two distinct terminals")
        if terms[0] < 0 or terms[-1] >= n:
            raise ValueError("terminal outside [0, node_count)")
        for arr in (a, b, r):
            arr.setflags(write=False)
        self.node_count = n
        self.endpoint_a = a
        self.endpoint_b = b
        self.reliability = r
        self.terminals = terms

    @property
    def edge_count(self) -> int:
        return int(self.endpoint_a.shape[0])

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        return [
            (int(x), int(y), float(p))
            for x, y, p in zip(self.endpoint_a, self.endpoint_b, self.reliability)
        ]

    def endpoints(self, e: int) -> tuple[int, int]:
        return int(self.endpoint_a[e]), int(self.endpoint_b[e])

    def with_reliability(self, reliability) -> Network:
        """Copy with new reliabilities (a scalar or one value per edge)."""
        rel = np.broadcast_to(np.asarray(reliability, dtype=float), (self.edge_count,))
        edges = zip(self.endpoint_a, self.endpoint_b, rel)
        return Network(self.node_count, edges, self.terminals)

    def with_terminals(self, terminals: Iterable[int]) -> Network:
        return Network(self.node_count, self.edges, terminals)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Adjacency as ``(indptr, neighbour, edge_id)`` arrays."""
        n, m = self.node_count, self.edge_count
        src = np.concatenate([self.endpoint_a, self.endpoint_b])
        dst = np.concatenate([self.endpoint_b, self.endpoint_a])
        ids = np.concatenate([np.arange(m), np.arange(m)]).astype(np.int64)
        order = np.argsort(src, kind="stable")
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return indptr, dst[order].astype(np.int64), ids[order]

    @cached_property
    def terminal_array(self) -> np.ndarray:
        return np.array(self.terminals, dtype=np.int64)

    def incident_edges(self, node: int) -> list[int]:
        indptr, _, eid = self.csr
        return sorted(int(e) for e in eid[indptr[node]:indptr[node + 1]])

    def __repr__(self) -> str:
        return f"Network(n={self.node_count}, m={self.edge_count}, terminals={self.terminals})"


def as_active(net: Network, active) -> np.ndarray:
    """Normalise a configuration or an edge subset to a boolean mask over edges.

    A boolean array of length m is taken as a configuration; anything else is
    read as a collection of edge ids. ``None`` means every edge is up.
    """
    m = net.edge_count
    if active is None:
        return np.ones(m, dtype=bool)
    if isinstance(active, np.ndarray) and active.dtype == bool:
        if active.shape != (m,):
            raise ValueError(f"configuration has length {active.shape}, expected {m}")
        return active
    mask = np.zeros(m, dtype=bool)
    ids = np.fromiter((int(e) for e in active), dtype=np.int64)
    if ids.size:
        if ids.min() < 0 or ids.max() >= m:
            raise ValueError("edge id outside [0, m)")
        mask[ids] = True
    return mask


def _to_public(d: int):
    return math.inf if d >= INF_DIST else int(d)


def bfs_distances(net: Network, active, source: int) -> np.ndarray:
    """Hop distance from ``source`` to every node over the active edges.

    Returns a float array; unreachable nodes hold ``inf``.
    """
    if not 0 <= source < net.node_count:
        raise ValueError(f"source {source} is not a node")
    up = as_active(net, active)
    indptr, nbr, eid = net.csr
    dist = np.empty(net.node_count, dtype=np.int64)
    queue = np.empty(net.node_count, dtype=np.int64)
    _kernels.bfs(indptr, nbr, eid, up, source, dist, queue)
    out = dist.astype(float)
    out[dist >= INF_DIST] = math.inf
    return out


def _max_distance_raw(net: Network, up: np.ndarray) -> int:
    indptr, nbr, eid = net.csr
    n = net.node_count
    dist = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    return int(
        _kernels.max_terminal_distance(indptr, nbr, eid, up, net.terminal_array, dist, queue)
    )


def max_terminal_distance(net: Network, active=None):
    """Largest hop distance between two terminals; ``math.inf`` if some pair is cut off."""
    return _to_public(_max_distance_raw(net, as_active(net, active)))


def _bound(d) -> int:
    if d is None or d == math.inf:
        return int(UNBOUNDED)
    d = int(d)
    if d < 1:
        raise ValueError(f"distance bound must be >= 1, got {d}")
    return min(d, int(UNBOUNDED))


def is_d_connected(net: Network, active, d=None) -> bool:
    """True iff every terminal pair is within ``d`` hops; ``d=None`` asks for plain connectivity."""
    return _max_distance_raw(net, as_active(net, active)) <= _bound(d)


def batch_max_distance(net: Network, ups: np.ndarray) -> np.ndarray:
    """Raw max terminal distance per row of a (B, m) boolean array, INF_DIST for disconnected."""
    indptr, nbr, eid = net.csr
    return _kernels.batch_max_distance(indptr, nbr, eid, np.ascontiguousarray(ups),
                                       net.terminal_array)
