"""Ground truth by exhaustive enumeration, for small instances.

Distances here come from level-synchronous frontier expansion written with
matrix products over whole batches of configurations. This shares no code
with the BFS kernel the estimators use.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .edgesets import EdgeSetFamilies
from .errors import OmegaTooLarge, TooManyEdges
from .graph import Network
from .regions import RegionSpec

__all__ = ["ExactResult", "enumerate_exact", "enumerate_z", "ENUMERATION_CAP"]

ENUMERATION_CAP = 22
_BATCH = 1 << 14
_UNREACHED = np.iinfo(np.int64).max


@dataclass(frozen=True)
class ExactResult:
    expected_phi: float
    p: np.ndarray
    z: Optional[np.ndarray] = None


def _configurations(start: int, stop: int, width: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.uint64)
    return ((idx[:, None] >> np.arange(width, dtype=np.uint64)) & np.uint64(1)).astype(bool)


def _config_probs(states: np.ndarray, rel: np.ndarray) -> np.ndarray:
    return np.where(states, rel, 1.0 - rel).prod(axis=1)


def level_distances(net: Network, ups: np.ndarray, source: int) -> np.ndarray:
    """(B, n) hop distances from ``source``; unreachable nodes hold ``_UNREACHED``."""
    n, m = net.node_count, net.edge_count
    a, b = net.endpoint_a, net.endpoint_b
    to_b = np.zeros((m, n), dtype=np.float32)
    to_b[np.arange(m), b] = 1.0
    to_a = np.zeros((m, n), dtype=np.float32)
    to_a[np.arange(m), a] = 1.0
    batch = ups.shape[0]
    reach = np.zeros((batch, n), dtype=bool)
    reach[:, source] = True
    dist = np.full((batch, n), _UNREACHED, dtype=np.int64)
    dist[:, source] = 0
    up = ups.astype(np.float32)
    for level in range(1, n):
        from_a = reach[:, a].astype(np.float32) * up
        from_b = reach[:, b].astype(np.float32) * up
        grown = reach | ((from_a @ to_b + from_b @ to_a) > 0)
        fresh = grown & ~reach
        if not fresh.any():
            break
        dist[fresh] = level
        reach = grown
    return dist


def _max_distance(net: Network, ups: np.ndarray) -> np.ndarray:
    terms = net.terminals
    worst = np.zeros(ups.shape[0], dtype=np.int64)
    for i, s in enumerate(terms[:-1]):
        dist = level_distances(net, ups, s)
        for t in terms[i + 1:]:
            np.maximum(worst, dist[:, t], out=worst)
    return worst


def _regions(spec: RegionSpec, deltas: np.ndarray) -> np.ndarray:
    # interval membership written out directly rather than via RegionSpec.bounds
    out = np.full(deltas.shape, spec.last, dtype=np.int64)
    finite = deltas != _UNREACHED
    t = spec.thresholds
    for i in range(len(t) - 1, -1, -1):
        out[finite & (deltas <= t[i])] = i
    if not spec.separates_disconnected:
        return out
    above = finite & (deltas > (t[-1] if t else 0))
    out[above] = spec.last - 1
    return out


def _z_events(families: EdgeSetFamilies, ups: np.ndarray, columns) -> list[np.ndarray]:
    events = []
    last = families.num_regions - 1
    for i in range(families.num_regions):
        t = np.zeros(ups.shape[0], dtype=bool)
        for p in families.pathsets[i]:
            t |= ups[:, [columns[e] for e in p]].all(axis=1)
        k = np.zeros(ups.shape[0], dtype=bool)
        for c in families.cutsets[i]:
            k |= (~ups[:, [columns[e] for e in c]]).all(axis=1)
        if i == 0:
            events.append(t)
        elif i == last:
            events.append(k)
        else:
            events.append(t & k)
    return events


def enumerate_exact(net: Network, spec: RegionSpec, families: EdgeSetFamilies | None = None,
                    cap: int = ENUMERATION_CAP) -> ExactResult:
    """Exact region probabilities and E[Phi] over all 2**m configurations.

    When ``families`` is given the z_i are accumulated as well, and every
    configuration inside some Z_i is checked to really lie in region i.
    """
    m = net.edge_count
    if m > cap:
        raise TooManyEdges(m, cap)
    nreg = spec.num_regions
    p = np.zeros(nreg)
    z = np.zeros(nreg) if families is not None else None
    columns = {e: e for e in range(m)}
    total = 1 << m
    for start in range(0, total, _BATCH):
        ups = _configurations(start, min(start + _BATCH, total), m)
        probs = _config_probs(ups, net.reliability)
        region = _regions(spec, _max_distance(net, ups))
        p += np.bincount(region, weights=probs, minlength=nreg)
        if families is not None:
            for i, event in enumerate(_z_events(families, ups, columns)):
                wrong = event & (region != i)
                if wrong.any():
                    raise RuntimeError(
                        f"configuration {start + int(np.flatnonzero(wrong)[0])} satisfies Z_{i} "
                        f"but lies in region {int(region[wrong][0])}"
                    )
                z[i] += probs[event].sum()
    return ExactResult(expected_phi=float(np.dot(spec.phi, p)), p=p, z=z)


def enumerate_z(families: EdgeSetFamilies, cap: int = 24) -> np.ndarray:
    """Exact z_i by visiting all 2**|Omega| states of the conditioning edges."""
    omega = families.omega
    k = len(omega)
    if k > cap:
        raise OmegaTooLarge(k, cap)
    rel = families.net.reliability[list(omega)]
    columns = {e: j for j, e in enumerate(omega)}
    z = np.zeros(families.num_regions)
    total = 1 << k
    for start in range(0, total, _BATCH):
        states = _configurations(start, min(start + _BATCH, total), k)
        probs = _config_probs(states, rel)
        for i, event in enumerate(_z_events(families, states, columns)):
            z[i] += math.fsum(probs[event])
    return z
