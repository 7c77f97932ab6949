"""Greedy randomized construction of d-pathsets and d-cutsets for one region.

Two-terminal only: ``s`` and ``t`` are the endpoints whose hop distance the
sets pin down. A *version* string such as ``"PCCP"`` gives the order in which
paths (P) and cutsets (C) are added during one iteration.
"""
from __future__ import annotations

import math
import time
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .edgesets import EdgeSetFamilies, build_families
from .events import set_event_probability
from .graph import UNBOUNDED, Network
from .regions import RegionSpec

__all__ = [
    "HeuristicConfig",
    "HeuristicSolution",
    "generate_path",
    "generate_cutset",
    "shake_distances",
    "run_region_heuristic",
    "heuristic_families",
]


@dataclass(frozen=True)
class HeuristicConfig:
    """Budget and sequence for one heuristic run.

    ``max_iterations`` caps the number of outer iterations on top of the
    wall-clock budget, which makes a seeded run fully reproducible.
    """

    version: str = "PCCP"
    max_time: float = 40.0
    max_tries: int = 5
    seed: int = 0
    max_iterations: Optional[int] = None

    def __post_init__(self):
        v = self.version.upper()
        if not v or set(v) - {"P", "C"}:
            raise ValueError(f"version must be a non-empty string over P and C, got {self.version!r}")
        if set(v) == {"P", "C"} and not v.startswith("PC"):
            raise ValueError(f"mixed versions start with a pathset and a cutset, got {v!r}")
        if self.max_tries < 1:
            raise ValueError("max_tries must be >= 1")
        object.__setattr__(self, "version", v)

    @property
    def kind(self) -> str:
        letters = set(self.version)
        return "TK" if len(letters) == 2 else "T" if letters == {"P"} else "K"


@dataclass
class HeuristicSolution:
    pathsets: list[tuple[int, ...]] = field(default_factory=list)
    cutsets: list[tuple[int, ...]] = field(default_factory=list)
    probability: float = 0.0
    # number of evaluated candidates by component count
    attempts: dict[int, int] = field(default_factory=dict)
    # best probability after every evaluation
    history: list[float] = field(default_factory=list)
    iterations: int = 0
    elapsed: float = 0.0

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.pathsets) + sum(len(s) for s in self.cutsets)


def _adjacency(net: Network, exclude: Iterable[int] = ()) -> list[dict[int, int]]:
    skip = set(exclude)
    adj: list[dict[int, int]] = [{} for _ in range(net.node_count)]
    for e, (a, b) in enumerate(zip(net.endpoint_a.tolist(), net.endpoint_b.tolist())):
        if e not in skip:
            adj[a][e] = b
            adj[b][e] = a
    return adj


def _remove(adj, net: Network, e: int):
    a, b = net.endpoints(e)
    del adj[a][e]
    del adj[b][e]


def _restore(adj, net: Network, e: int):
    a, b = net.endpoints(e)
    adj[a][e] = b
    adj[b][e] = a


def _shortest_path(adj, src: int, dst: int, avoid=frozenset()):
    """Edges and nodes ``[(e1, v1), ...]`` of a shortest src-dst path, or None."""
    prev = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            break
        for e, v in adj[u].items():
            if v not in prev and v not in avoid:
                prev[v] = (u, e)
                queue.append(v)
    if dst not in prev:
        return None
    steps = []
    v = dst
    while prev[v] is not None:
        u, e = prev[v]
        steps.append((e, v))
        v = u
    steps.reverse()
    return steps


def _distance(adj, src: int, dst: int) -> float:
    if src == dst:
        return 0
    seen = {src}
    frontier = [src]
    level = 0
    while frontier:
        level += 1
        nxt = []
        for u in frontier:
            for v in adj[u].values():
                if v not in seen:
                    if v == dst:
                        return level
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return math.inf


def generate_path(net: Network, s: int, t: int, l1: int, l2: int, rng: np.random.Generator,
                  forbidden: Iterable[int] = ()) -> Optional[list[int]]:
    """Random simple s-t path with between ``l1`` and ``l2`` edges, or None.

    At each node the walk either takes the next edge of a shortest path to
    ``t`` or steps to a random other neighbour. It follows the shortest path
    with probability ``(len + dist - l1) / (l2 - l1)`` clamped to [0, 1], so it
    wanders while there is slack and heads for ``t`` once there is little.
    """
    if s == t:
        raise ValueError("s and t must differ")
    if not 1 <= l1 <= l2:
        raise ValueError(f"need 1 <= l1 <= l2, got {l1}, {l2}")
    adj = _adjacency(net, forbidden)
    path: list[int] = []
    on_path = {s}
    curr = s
    length = 0
    while curr != t:
        sh = _shortest_path(adj, curr, t, on_path)
        if sh is None or length + len(sh) > l2:
            return None
        first_edge, first_node = sh[0]
        others = [(e, v) for e, v in adj[curr].items() if v not in on_path and e != first_edge]
        if l2 == l1:
            follow = 1.0
        else:
            follow = min(1.0, max(0.0, (length + len(sh) - l1) / (l2 - l1)))
        if not others or rng.random() < follow:
            e, nxt = first_edge, first_node
        else:
            e, nxt = others[int(rng.integers(len(others)))]
        _remove(adj, net, e)
        path.append(e)
        on_path.add(nxt)
        curr = nxt
        length += 1
    if length < l1:
        return None
    return path


def shake_distances(d, rng: np.random.Generator) -> np.ndarray:
    """Randomly swap values: each pair, in random order, swaps with probability 1/(1 + |gap|).

    Infinite entries only ever swap with each other.
    """
    d = np.array(d, dtype=float)
    n = d.shape[0]
    if n < 2:
        return d
    rows, cols = np.triu_indices(n, k=1)
    order = rng.permutation(rows.shape[0])
    coins = rng.random(rows.shape[0]).tolist()
    vals = d.tolist()
    for k, idx in enumerate(order.tolist()):
        i, j = int(rows[idx]), int(cols[idx])
        a, b = vals[i], vals[j]
        if a == b:
            continue
        if math.isinf(a) or math.isinf(b):
            continue
        if coins[k] < 1.0 / (1.0 + abs(a - b)):
            vals[i], vals[j] = b, a
    return np.array(vals)


def generate_cutset(net: Network, s: int, t: int, ell: Optional[int], H: Iterable[int],
                    rng: np.random.Generator) -> Optional[list[int]]:
    """Minimal set of edges outside ``H`` whose removal leaves s-t distance above ``ell``.

    ``ell=None`` asks for a plain cut. Returns None when no such set exists,
    i.e. when edges of ``H`` alone already join s and t within ``ell`` hops.
    Candidate edges are removed in order of shaken distance from ``s``, then
    edges are put back one at a time wherever the cut survives without them.
    """
    limit = math.inf if ell is None or ell >= UNBOUNDED else ell
    if limit < 0:
        raise ValueError("ell must be >= 0")
    H = set(H)
    free = _adjacency(net, H)
    d = np.full(net.node_count, math.inf)
    d[s] = 0
    for v, dist in _bfs_all(free, s).items():
        d[v] = dist
    d = shake_distances(d, rng)
    candidates = [e for e in range(net.edge_count) if e not in H]
    key = {e: min(d[net.endpoint_a[e]], d[net.endpoint_b[e]]) for e in candidates}
    ties = rng.random(net.edge_count)
    queue = deque(sorted(candidates, key=lambda e: (key[e], ties[e])))

    adj = _adjacency(net)
    def joined():
        dist = _distance(adj, s, t)
        return dist != math.inf and dist <= limit

    removed = []
    while joined():
        if not queue:
            return None
        e = queue.popleft()
        _remove(adj, net, e)
        removed.append(e)
    cut = []
    for e in removed:
        _restore(adj, net, e)
        if joined():
            _remove(adj, net, e)
            cut.append(e)
    return cut


def _bfs_all(adj, src: int) -> dict[int, int]:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in adj[u].values():
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def run_region_heuristic(net: Network, s: int, t: int, l1: Optional[int], l2: Optional[int],
                         config: HeuristicConfig) -> HeuristicSolution:
    """Best (pathsets, cutsets) pinning the s-t distance into ``[l1, l2]``.

    Paths get lengths in ``[l1, l2]`` and cutsets are ``(l1 - 1)``-cutsets.
    All-P versions only build paths (first region) and all-C versions only
    build cutsets (last region; ``l1=None`` asks for plain cuts). Every
    component avoids the edges of the components already chosen in the same
    iteration, so the sets are pairwise disjoint.
    """
    rng = np.random.default_rng(config.seed)
    kind = config.kind
    rel = net.reliability
    ell = None if l1 is None else l1 - 1
    if kind != "K" and (l1 is None or l2 is None):
        raise ValueError("path generation needs both length bounds")
    if kind == "TK" and ell is not None and ell < 1:
        raise ValueError("an interior region needs l1 >= 2")

    best = HeuristicSolution()
    counts: Counter = Counter()
    start = time.perf_counter()
    feasible = kind == "K" or (l1 <= l2)
    while feasible and time.perf_counter() - start < config.max_time:
        if config.max_iterations is not None and best.iterations >= config.max_iterations:
            break
        best.iterations += 1
        P: list[list[int]] = []
        C: list[list[int]] = []
        used: set[int] = set()
        for letter in config.version:
            found = None
            for _ in range(config.max_tries):
                if letter == "P":
                    found = generate_path(net, s, t, l1, l2, rng, forbidden=used)
                else:
                    found = generate_cutset(net, s, t, ell, used, rng)
                if found is not None:
                    break
            if found is None:
                break
            (P if letter == "P" else C).append(found)
            used.update(found)
            if kind == "TK" and not (P and C):
                continue
            prob = set_event_probability(rel, P, C, kind)
            counts[len(P) + len(C)] += 1
            if prob > best.probability:
                best.probability = prob
                best.pathsets = [tuple(p) for p in P]
                best.cutsets = [tuple(c) for c in C]
            best.history.append(best.probability)
    best.attempts = dict(counts)
    best.elapsed = time.perf_counter() - start
    return best


def _path_cap(bound: int, net: Network) -> int:
    return net.node_count - 1 if bound >= UNBOUNDED else bound


def heuristic_families(net: Network, spec: RegionSpec, version: str = "PCCP", *,
                       max_time: float = 40.0, max_tries: int = 5, seed: int = 0,
                       max_iterations: Optional[int] = None,
                       border_version: Optional[str] = None,
                       ) -> tuple[EdgeSetFamilies, list[HeuristicSolution]]:
    """Run the heuristic on every region of a two-terminal network and validate the result.

    Interior regions use ``version``; the first region uses an all-P version
    and the last an all-C version, of length ``len(border_version or version)``.
    """
    if len(net.terminals) != 2:
        raise ValueError("the heuristics handle two terminals only")
    s, t = net.terminals
    nreg = spec.num_regions
    width = len(border_version or version)
    seeds = np.random.SeedSequence(seed).spawn(nreg)
    pathsets: list[list] = [[] for _ in range(nreg)]
    cutsets: list[list] = [[] for _ in range(nreg)]
    solutions = []
    for i in range(nreg):
        region_seed = int(seeds[i].generate_state(1)[0])
        if i == 0:
            cfg_version, l1, l2 = "P" * width, 1, _path_cap(spec.pathset_bound(0), net)
        elif i == nreg - 1:
            cfg_version, l1, l2 = "C" * width, None, None
        else:
            cfg_version = version
            l1 = spec.bounds[i - 1] + 1
            l2 = _path_cap(spec.bounds[i], net)
        cfg = HeuristicConfig(cfg_version, max_time, max_tries, region_seed, max_iterations)
        sol = run_region_heuristic(net, s, t, l1, l2, cfg)
        solutions.append(sol)
        if cfg.kind == "TK" and not (sol.pathsets and sol.cutsets):
            continue
        pathsets[i] = [list(p) for p in sol.pathsets]
        cutsets[i] = [list(c) for c in sol.cutsets]
    return build_families(net, spec, pathsets, cutsets), solutions
