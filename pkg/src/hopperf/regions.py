"""Quality regions over the max terminal distance, their Phi values, and unconditioned sampling."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import INF_DIST, UNBOUNDED, Network, _max_distance_raw, as_active

__all__ = [
    "RegionSpec",
    "region_of",
    "phi_of",
    "sample_configuration",
    "worker_streams",
]


@dataclass(frozen=True)
class RegionSpec:
    """Distance thresholds ``d_0 < ... < d_{k-1}`` and one Phi value per region.

    With ``k + 1`` Phi values the regions are ``(0, d_0], ..., (d_{k-1}, inf]``.
    With ``k + 2`` values the last finite interval ``(d_{k-1}, inf)`` is kept
    apart from the disconnected configurations, which get their own final
    region (the layout of the fines tables used for ANTEL).
    """

    thresholds: tuple[int, ...]
    phi_values: tuple[float, ...]

    def __post_init__(self):
        t = tuple(int(d) for d in self.thresholds)
        phi = tuple(float(v) for v in self.phi_values)
        if any(d < 1 for d in t):
            raise ValueError(f"thresholds must be >= 1, got {t}")
        if any(b <= a for a, b in zip(t, t[1:])):
            raise ValueError(f"thresholds must be strictly increasing, got {t}")
        if len(phi) not in (len(t) + 1, len(t) + 2):
            raise ValueError(
                f"{len(t)} thresholds need {len(t) + 1} or {len(t) + 2} phi values, got {len(phi)}"
            )
        if not all(math.isfinite(v) for v in phi):
            raise ValueError("phi values must be finite")
        object.__setattr__(self, "thresholds", t)
        object.__setattr__(self, "phi_values", phi)

    @property
    def num_regions(self) -> int:
        return len(self.phi_values)

    @property
    def last(self) -> int:
        """Index r of the last region."""
        return len(self.phi_values) - 1

    @property
    def separates_disconnected(self) -> bool:
        return len(self.phi_values) == len(self.thresholds) + 2

    @property
    def bounds(self) -> tuple[int, ...]:
        """Inclusive upper distance bound of every region, in raw kernel units."""
        extra = (int(UNBOUNDED),) if self.separates_disconnected else ()
        return self.thresholds + extra + (int(INF_DIST),)

    @property
    def phi(self) -> np.ndarray:
        return np.array(self.phi_values)

    def pathset_bound(self, i: int) -> int:
        """Distance bound a member of P_i must meet (UNBOUNDED means connectivity)."""
        if i == self.last:
            return int(UNBOUNDED)
        return self.bounds[i]

    def cutset_bound(self, i: int) -> int:
        """Distance a member of C_i must exceed once removed."""
        if i == 0:
            raise ValueError("region 0 carries no cutsets")
        return self.bounds[i - 1]

    def regions_raw(self, deltas: np.ndarray) -> np.ndarray:
        """Vectorised region lookup on raw distances (>= 1)."""
        return np.searchsorted(np.array(self.bounds, dtype=np.int64), deltas, side="left")


def region_of(delta, spec: RegionSpec) -> int:
    """Index of the region whose distance interval contains ``delta``."""
    if delta == math.inf or delta is None:
        raw = int(INF_DIST)
    else:
        raw = int(delta)
        if raw != delta:
            raise ValueError(f"distance must be an integer or inf, got {delta}")
        if raw < 1:
            raise ValueError(
                f"distance {delta} is impossible between two distinct terminals"
            )
        raw = min(raw, int(UNBOUNDED))
    for i, b in enumerate(spec.bounds):
        if raw <= b:
            return i
    raise AssertionError("unreachable: last bound is INF_DIST")


def phi_of(x, net: Network, spec: RegionSpec) -> float:
    """Phi value of configuration ``x`` (bool mask or edge subset)."""
    raw = _max_distance_raw(net, as_active(net, x))
    return spec.phi_values[int(spec.regions_raw(np.array([raw]))[0])]


def sample_configuration(net: Network, rng: np.random.Generator) -> np.ndarray:
    """One configuration: edge e is up with probability r_e, independently."""
    return rng.random(net.edge_count) < net.reliability


def worker_streams(seed: int, workers: int) -> list[np.random.Generator]:
    """Independent generators for ``workers`` workers, fixed by ``seed`` alone.

    Worker ``w`` always gets the same stream for a given seed, whatever the
    scheduling.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    children = np.random.SeedSequence(seed).spawn(workers)
    return [np.random.Generator(np.random.PCG64(c)) for c in children]


def split_evenly(total: int, parts: int) -> list[int]:
    base, extra = divmod(total, parts)
    return [base + (1 if w < extra else 0) for w in range(parts)]


def phi_array(spec: RegionSpec | Sequence[float]) -> np.ndarray:
    if isinstance(spec, RegionSpec):
        return spec.phi
    return np.asarray(spec, dtype=float)
