"""Probabilities of the pinned events Z_i and sampling of Omega conditioned on not-Z.

Two ways to handle the edges of Omega:

* factorized: products over edge-disjoint sets, evaluated edge by edge
  (``SequentialSampler``); needs the sets of each region to be disjoint.
* table: exact mass of all ``2**|Omega|`` sub-configurations with a cut-point
  lookup (``TableSampler``); any overlap, bounded ``|Omega|``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import _kernels
from .edgesets import EdgeSetFamilies, omega_masks
from .errors import FamilyNotDisjoint, OmegaTooLarge, ZeroConditional

__all__ = [
    "EventProbabilities",
    "SubConfigTable",
    "region_event_prob",
    "total_z_and_phi",
    "conditional_up_probability",
    "build_subconfig_table",
    "TableSampler",
    "SequentialSampler",
    "make_sampler",
    "in_z",
    "table_region_z",
    "set_event_probability",
    "TABLE_CAP",
]

TABLE_CAP = 24
_KIND_CODE = {"T": 0, "TK": 1, "K": 2}


def set_event_probability(q, pathsets, cutsets, kind: str) -> float:
    """Pr(Z) for one region from per-edge up-probabilities ``q`` (indexable by edge id).

    Sets must be pairwise edge-disjoint. ``kind`` is ``"T"`` (some pathset
    operates), ``"K"`` (some cutset fails) or ``"TK"`` (both).
    """
    t_fail = 1.0
    for p in pathsets:
        t_fail *= 1.0 - math.prod(q[e] for e in p)
    k_fail = 1.0
    for c in cutsets:
        k_fail *= 1.0 - math.prod(1.0 - q[e] for e in c)
    if kind == "T":
        return float(1.0 - t_fail)
    if kind == "K":
        return float(1.0 - k_fail)
    return float((1.0 - t_fail) * (1.0 - k_fail))


def _check_disjoint(families: EdgeSetFamilies, i: int):
    for a, b in itertools.combinations(families.region_sets(i), 2):
        if a & b:
            raise FamilyNotDisjoint(
                f"region {i}: {sorted(a)} and {sorted(b)} share edges; "
                "the product form needs disjoint sets (use table mode)"
            )


def _fixed_q(families: EdgeSetFamilies, fixings: Mapping[int, int] | None) -> np.ndarray:
    q = families.net.reliability.astype(float)
    if fixings:
        for e, state in fixings.items():
            if state not in (0, 1, True, False):
                raise ValueError(f"edge {e} fixed to {state!r}; expected 0 or 1")
            q[int(e)] = float(state)
    return q


def region_event_prob(families: EdgeSetFamilies, i: int, fixings: Mapping[int, int] | None = None) -> float:
    """Pr(Z_i | fixings) where ``fixings`` maps edge ids to states 0/1."""
    _check_disjoint(families, i)
    q = _fixed_q(families, fixings)
    return set_event_probability(q, families.pathsets[i], families.cutsets[i],
                                 families.region_kind(i))


@dataclass(frozen=True)
class EventProbabilities:
    z_i: tuple[float, ...]
    z: float
    phi_offset: float


def _sum_small_first(values) -> float:
    return math.fsum(sorted(values, key=abs))


def total_z_and_phi(families: EdgeSetFamilies) -> EventProbabilities:
    """z_i for every region, z = sum z_i and phi = sum Phi_i z_i."""
    z_i = tuple(region_event_prob(families, i) for i in range(families.num_regions))
    phi = families.spec.phi_values
    z = _sum_small_first(z_i)
    if z >= 1.0:
        raise ArithmeticError(f"z = {z}: the conditioning events cover every configuration")
    return EventProbabilities(
        z_i=z_i,
        z=z,
        phi_offset=_sum_small_first(v * zi for v, zi in zip(phi, z_i)),
    )


def _prob_not_z(families: EdgeSetFamilies, q: np.ndarray) -> float:
    z = [
        set_event_probability(q, families.pathsets[i], families.cutsets[i],
                              families.region_kind(i))
        for i in range(families.num_regions)
    ]
    return 1.0 - _sum_small_first(z)


def conditional_up_probability(families: EdgeSetFamilies, fixings: Mapping[int, int] | None,
                               edge: int) -> float:
    """Pr(edge up | not Z, fixings), the step of the sequential sampler."""
    for i in range(families.num_regions):
        _check_disjoint(families, i)
    q = _fixed_q(families, fixings)
    denom = _prob_not_z(families, q)
    if denom < 1e-300:
        raise ZeroConditional(f"Pr(not Z | fixings) = {denom}")
    r = q[edge]
    q[edge] = 1.0
    return float(r * _prob_not_z(families, q) / denom)


def _sub_config_probs(rho: np.ndarray) -> np.ndarray:
    # bit j of the index is the state of the j-th edge of Omega
    probs = np.ones(1)
    for p in rho:
        probs = np.concatenate([probs * (1.0 - p), probs * p])
    return probs


def _region_masks(families: EdgeSetFamilies, index: np.ndarray) -> list[np.ndarray]:
    """For each region, which sub-configuration indices satisfy Z_i."""
    _, P, C = omega_masks(families)
    out = []
    for i in range(families.num_regions):
        kind = families.region_kind(i)
        t = np.zeros(index.shape, dtype=bool)
        k = np.zeros(index.shape, dtype=bool)
        for pos in P[i]:
            mask = np.uint64(int((1 << pos).sum()))
            t |= (index & mask) == mask
        for pos in C[i]:
            mask = np.uint64(int((1 << pos).sum()))
            k |= (index & mask) == 0
        out.append(t if kind == "T" else k if kind == "K" else t & k)
    return out


def table_region_z(families: EdgeSetFamilies, cap: int = TABLE_CAP) -> tuple[float, ...]:
    """z_i by summing sub-configuration masses; valid for overlapping sets too."""
    k = len(families.omega)
    if k > cap:
        raise OmegaTooLarge(k, cap)
    probs = _sub_config_probs(families.net.reliability[list(families.omega)])
    index = np.arange(1 << k, dtype=np.uint64)
    return tuple(math.fsum(probs[m]) for m in _region_masks(families, index))


@dataclass(frozen=True, eq=False)
class SubConfigTable:
    """Cumulative mass of Omega sub-configurations outside Z, in index order."""

    omega: tuple[int, ...]
    cumulative: np.ndarray

    @property
    def total(self) -> float:
        return float(self.cumulative[-1])

    @property
    def mass(self) -> np.ndarray:
        return np.diff(self.cumulative, prepend=0.0)


def build_subconfig_table(families: EdgeSetFamilies, cap: int = TABLE_CAP) -> SubConfigTable:
    """Mass of every Omega sub-configuration, zeroed where Z holds; total is 1 - z."""
    omega = families.omega
    k = len(omega)
    if k > cap:
        raise OmegaTooLarge(k, cap)
    rho = families.net.reliability[list(omega)]
    probs = _sub_config_probs(rho)
    index = np.arange(1 << k, dtype=np.uint64)
    for mask in _region_masks(families, index):
        probs[mask] = 0.0
    cum = np.cumsum(probs)
    cum.setflags(write=False)
    return SubConfigTable(omega=omega, cumulative=cum)


class TableSampler:
    """Cut-point sampling of Omega states from a precomputed table."""

    mode = "table"

    def __init__(self, families: EdgeSetFamilies, cap: int = TABLE_CAP):
        self.table = build_subconfig_table(families, cap)
        self.omega = np.array(self.table.omega, dtype=np.int64)
        mass = self.table.mass
        self._last = int(np.flatnonzero(mass > 0)[-1]) if mass.size else 0
        self._shifts = np.arange(len(self.omega), dtype=np.uint64)

    @property
    def prob_not_z(self) -> float:
        return self.table.total

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        u = rng.random(size) * self.table.total
        idx = np.searchsorted(self.table.cumulative, u, side="right")
        np.minimum(idx, self._last, out=idx)
        return ((idx.astype(np.uint64)[:, None] >> self._shifts) & np.uint64(1)).astype(bool)


class SequentialSampler:
    """Edge-by-edge sampling with factorized conditional probabilities."""

    mode = "sequential"

    def __init__(self, families: EdgeSetFamilies):
        for i in range(families.num_regions):
            _check_disjoint(families, i)
        omega, P, C = omega_masks(families)
        self.omega = omega
        self.rho = families.net.reliability[omega].astype(float)
        sets, is_cut, region = [], [], []
        for i in range(families.num_regions):
            for pos in P[i]:
                sets.append(pos), is_cut.append(False), region.append(i)
            for pos in C[i]:
                sets.append(pos), is_cut.append(True), region.append(i)
        self._ptr = np.zeros(len(sets) + 1, dtype=np.int64)
        np.cumsum([len(s) for s in sets], out=self._ptr[1:])
        self._members = (np.concatenate(sets) if sets else np.zeros(0)).astype(np.int64)
        self._is_cut = np.array(is_cut, dtype=bool)
        self._region = np.array(region, dtype=np.int64)
        self._kind = np.array(
            [_KIND_CODE[families.region_kind(i)] for i in range(families.num_regions)],
            dtype=np.int64,
        )
        self.prob_not_z = _prob_not_z(families, families.net.reliability.astype(float))

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        uniforms = rng.random((size, len(self.omega)))
        out = np.empty((size, len(self.omega)), dtype=bool)
        bad = _kernels.sequential_sample(self.rho, self._ptr, self._members, self._is_cut,
                                         self._region, self._kind, uniforms, out)
        if bad >= 0:
            raise ZeroConditional(f"conditioning probability vanished in draw {bad}")
        return out


def make_sampler(families: EdgeSetFamilies, mode: str = "auto", cap: int = TABLE_CAP):
    """Pick a sampler: ``"table"``, ``"sequential"``, or ``"auto"`` (table when |Omega| <= cap)."""
    if mode == "auto":
        if len(families.omega) <= cap or not families.disjoint:
            mode = "table"
        else:
            mode = "sequential"
    if mode == "table":
        return TableSampler(families, cap)
    if mode == "sequential":
        return SequentialSampler(families)
    raise ValueError(f"unknown sampling mode {mode!r}")


def in_z(families: EdgeSetFamilies, ups: np.ndarray) -> np.ndarray:
    """Per row of a (B, m) configuration array: does some Z_i hold? Direct evaluation."""
    ups = np.atleast_2d(ups)
    inside = np.zeros(ups.shape[0], dtype=bool)
    for i in range(families.num_regions):
        t = np.zeros(ups.shape[0], dtype=bool)
        k = np.zeros(ups.shape[0], dtype=bool)
        for p in families.pathsets[i]:
            t |= ups[:, sorted(p)].all(axis=1)
        for c in families.cutsets[i]:
            k |= ~ups[:, sorted(c)].any(axis=1)
        kind = families.region_kind(i)
        inside |= t if kind == "T" else k if kind == "K" else t & k
    return inside
