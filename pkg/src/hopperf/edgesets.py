"""Pathsets, cutsets and their per-region families."""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InvalidCutset, InvalidPathset, OverlapWithinRegion
from .graph import UNBOUNDED, Network, as_active, is_d_connected
from .regions import RegionSpec

__all__ = [
    "EdgeSetFamilies",
    "validate_pathset",
    "validate_cutset",
    "build_families",
]


def _d(bound):
    return None if bound is None or bound >= UNBOUNDED else bound


def validate_pathset(net: Network, edges: Iterable[int], d=None) -> bool:
    """True iff the terminals are ``d``-connected using only ``edges`` (``None``: connected)."""
    return is_d_connected(net, as_active(net, list(edges)), _d(d))


def validate_cutset(net: Network, edges: Iterable[int], d=None) -> bool:
    """True iff removing ``edges`` leaves the terminals not ``d``-connected."""
    return not is_d_connected(net, ~as_active(net, list(edges)), _d(d))


def _describe(bound: int) -> str:
    return "connectivity" if bound >= UNBOUNDED else str(bound)


@dataclass(frozen=True, eq=False)
class EdgeSetFamilies:
    """Validated conditioning sets: ``pathsets[i]`` is P_i and ``cutsets[i]`` is C_i."""

    net: Network
    spec: RegionSpec
    pathsets: tuple[tuple[frozenset, ...], ...]
    cutsets: tuple[tuple[frozenset, ...], ...]
    disjoint: bool

    @property
    def num_regions(self) -> int:
        return len(self.pathsets)

    @property
    def omega(self) -> tuple[int, ...]:
        """Sorted ids of every edge used by some set."""
        edges = set()
        for fam in itertools.chain(self.pathsets, self.cutsets):
            for s in fam:
                edges |= s
        return tuple(sorted(edges))

    @property
    def is_empty(self) -> bool:
        return not any(self.pathsets) and not any(self.cutsets)

    def region_kind(self, i: int) -> str:
        """Which events make up Z_i: ``"T"``, ``"TK"`` or ``"K"``."""
        if i == 0:
            return "T"
        if i == self.num_regions - 1:
            return "K"
        return "TK"

    def region_sets(self, i: int) -> list[frozenset]:
        return list(self.pathsets[i]) + list(self.cutsets[i])

    def to_lists(self) -> list[dict]:
        return [
            {
                "pathsets": [sorted(s) for s in self.pathsets[i]],
                "cutsets": [sorted(s) for s in self.cutsets[i]],
            }
            for i in range(self.num_regions)
        ]


def _per_region(raw, count: int, what: str) -> list[list[frozenset]]:
    out: list[list[frozenset]] = [[] for _ in range(count)]
    if raw is None:
        return out
    items = raw.items() if isinstance(raw, Mapping) else enumerate(raw)
    for i, sets in items:
        i = int(i)
        if not 0 <= i < count:
            raise ValueError(f"{what} given for region {i}, but there are {count} regions")
        out[i] = [frozenset(int(e) for e in s) for s in sets]
    return out


def build_families(
    net: Network,
    spec: RegionSpec,
    pathsets: Sequence | Mapping | None = None,
    cutsets: Sequence | Mapping | None = None,
    *,
    allow_overlap: bool = False,
) -> EdgeSetFamilies:
    """Validate raw per-region sets and bundle them.

    ``pathsets`` and ``cutsets`` hold one list of edge-id collections per
    region, either as a sequence indexed by region or a mapping from region
    index. Members of P_i must be ``d_i``-pathsets and members of C_i
    ``d_{i-1}``-cutsets. Sets of one region must not share edges unless
    ``allow_overlap`` is set (table sampling handles that case).
    """
    count = spec.num_regions
    P = _per_region(pathsets, count, "pathsets")
    C = _per_region(cutsets, count, "cutsets")
    m = net.edge_count
    last = count - 1
    if count > 1 and P[last]:
        raise ValueError(f"the last region ({last}) takes no pathsets")
    if C[0]:
        raise ValueError("region 0 takes no cutsets")

    disjoint = True
    for i in range(count):
        for s in P[i] + C[i]:
            if not s:
                raise ValueError(f"region {i}: empty edge set")
            if min(s) < 0 or max(s) >= m:
                raise ValueError(f"region {i}: edge id outside [0, {m}) in {sorted(s)}")
        pb = spec.pathset_bound(i)
        for s in P[i]:
            if not validate_pathset(net, s, pb):
                raise InvalidPathset(i, s, _describe(pb))
        if i > 0:
            cb = spec.cutset_bound(i)
            for s in C[i]:
                if not validate_cutset(net, s, cb):
                    raise InvalidCutset(i, s, _describe(cb))
        for a, b in itertools.combinations(P[i] + C[i], 2):
            if a & b:
                if not allow_overlap:
                    raise OverlapWithinRegion(i, a, b)
                warnings.warn(str(OverlapWithinRegion(i, a, b)), stacklevel=2)
                disjoint = False

    return EdgeSetFamilies(
        net=net,
        spec=spec,
        pathsets=tuple(tuple(p) for p in P),
        cutsets=tuple(tuple(c) for c in C),
        disjoint=disjoint,
    )


def empty_families(net: Network, spec: RegionSpec) -> EdgeSetFamilies:
    return build_families(net, spec)


def omega_masks(families: EdgeSetFamilies) -> tuple[np.ndarray, list[list[np.ndarray]], list[list[np.ndarray]]]:
    """Omega plus every set re-expressed as positions within Omega."""
    omega = np.array(families.omega, dtype=np.int64)
    pos = {int(e): k for k, e in enumerate(omega)}
    P = [[np.array(sorted(pos[e] for e in s)) for s in fam] for fam in families.pathsets]
    C = [[np.array(sorted(pos[e] for e in s)) for s in fam] for fam in families.cutsets]
    return omega, P, C
