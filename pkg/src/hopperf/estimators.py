"""Crude and conditioned Monte Carlo estimators of E[Phi], plus the closed-form variances."""
from __future__ import annotations

import math
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .edgesets import EdgeSetFamilies
from .events import TABLE_CAP, in_z, make_sampler, table_region_z, total_z_and_phi
from .graph import Network, batch_max_distance
from .regions import RegionSpec, phi_array, split_evenly, worker_streams

__all__ = [
    "EstimateReport",
    "crude_estimate",
    "conditioned_estimate",
    "theoretical_variances",
    "variance_difference",
    "reduction_condition",
    "relative_efficiency",
]

CHUNK = 1 << 15


@dataclass
class EstimateReport:
    method: str
    point_estimate: float
    variance_of_estimator: float
    sample_size: int
    per_region_counts: list[int]
    sampling_seconds: float
    setup_seconds: float
    seed: int
    workers: int
    mode: Optional[str] = None
    z: Optional[float] = None
    z_i: Optional[list[float]] = None
    phi_offset: Optional[float] = None
    omega_size: Optional[int] = None
    notes: list[str] = field(default_factory=list)

    @property
    def total_seconds(self) -> float:
        return self.sampling_seconds + self.setup_seconds

    @property
    def standard_error(self) -> float:
        return math.sqrt(self.variance_of_estimator)

    def to_dict(self) -> dict:
        return asdict(self)


def _count_stats(counts: np.ndarray, phi: np.ndarray) -> tuple[float, float]:
    """Mean and unbiased sample variance of Phi draws summarised by region counts."""
    n = int(counts.sum())
    mean = float(np.dot(counts, phi)) / n
    if n < 2:
        return mean, 0.0
    s2 = float(np.dot(counts, (phi - mean) ** 2)) / (n - 1)
    return mean, s2


def _run_workers(task, sizes, streams):
    if len(sizes) == 1:
        return [task(sizes[0], streams[0])]
    with ThreadPoolExecutor(max_workers=len(sizes)) as pool:
        return list(pool.map(task, sizes, streams))


def _regions_of(net: Network, spec: RegionSpec, ups: np.ndarray) -> np.ndarray:
    return spec.regions_raw(batch_max_distance(net, ups))


def crude_estimate(net: Network, spec: RegionSpec, n_samples: int, seed: int = 0,
                   workers: int = 1) -> EstimateReport:
    """Plain Monte Carlo: average Phi over ``n_samples`` independent configurations."""
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    nreg = spec.num_regions
    rel = net.reliability

    def task(size, rng):
        counts = np.zeros(nreg, dtype=np.int64)
        done = 0
        while done < size:
            b = min(CHUNK, size - done)
            ups = rng.random((b, net.edge_count)) < rel
            counts += np.bincount(_regions_of(net, spec, ups), minlength=nreg)
            done += b
        return counts

    t0 = time.perf_counter()
    parts = _run_workers(task, split_evenly(n_samples, workers), worker_streams(seed, workers))
    elapsed = time.perf_counter() - t0
    counts = np.sum(parts, axis=0)
    mean, s2 = _count_stats(counts, spec.phi)
    return EstimateReport(
        method="crude",
        point_estimate=mean,
        variance_of_estimator=s2 / n_samples,
        sample_size=n_samples,
        per_region_counts=[int(c) for c in counts],
        sampling_seconds=elapsed,
        setup_seconds=0.0,
        seed=seed,
        workers=workers,
    )


def conditioned_estimate(net: Network, spec: RegionSpec, families: EdgeSetFamilies,
                         n_samples: int, seed: int = 0, workers: int = 1, mode: str = "auto",
                         *, table_cap: int = TABLE_CAP, extra_setup_seconds: float = 0.0,
                         check_z: bool = False) -> EstimateReport:
    """Sample only outside Z and add back the pinned part: ``(1 - z) * mean + phi``.

    ``extra_setup_seconds`` is added to the setup time (e.g. the time spent
    finding the families). With ``check_z`` every draw is re-checked against
    the Z events and a draw inside Z raises ``RuntimeError``.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if families.net is not net and families.net.edge_count != net.edge_count:
        raise ValueError("families were built for a different network")
    notes = []
    if families.is_empty:
        warnings.warn("NoUsefulSets: all families are empty; this is crude Monte Carlo",
                      stacklevel=2)
        notes.append("NoUsefulSets")

    t0 = time.perf_counter()
    if families.disjoint:
        probs = total_z_and_phi(families)
        z_i = list(probs.z_i)
    else:
        z_i = list(table_region_z(families, table_cap))
        notes.append("overlapping sets: z_i from the sub-configuration table")
    z = math.fsum(sorted(z_i))
    phi_offset = math.fsum(sorted(v * zi for v, zi in zip(spec.phi_values, z_i)))
    sampler = make_sampler(families, mode, table_cap)
    setup = time.perf_counter() - t0 + extra_setup_seconds

    nreg = spec.num_regions
    rel = net.reliability
    omega = sampler.omega

    def task(size, rng):
        counts = np.zeros(nreg, dtype=np.int64)
        done = 0
        while done < size:
            b = min(CHUNK, size - done)
            ups = rng.random((b, net.edge_count)) < rel
            if omega.size:
                ups[:, omega] = sampler.sample(rng, b)
            if check_z and in_z(families, ups).any():
                raise RuntimeError("a conditioned draw landed inside Z")
            counts += np.bincount(_regions_of(net, spec, ups), minlength=nreg)
            done += b
        return counts

    t1 = time.perf_counter()
    parts = _run_workers(task, split_evenly(n_samples, workers), worker_streams(seed, workers))
    elapsed = time.perf_counter() - t1
    counts = np.sum(parts, axis=0)
    mean, s2 = _count_stats(counts, spec.phi)
    return EstimateReport(
        method="conditioned",
        point_estimate=(1.0 - z) * mean + phi_offset,
        variance_of_estimator=(1.0 - z) ** 2 * s2 / n_samples,
        sample_size=n_samples,
        per_region_counts=[int(c) for c in counts],
        sampling_seconds=elapsed,
        setup_seconds=setup,
        seed=seed,
        workers=workers,
        mode=sampler.mode,
        z=z,
        z_i=z_i,
        phi_offset=phi_offset,
        omega_size=int(omega.size),
        notes=notes,
    )


def _check_probabilities(p, z):
    if p.shape != z.shape:
        raise ValueError("p and z must have one entry per region")
    if np.any(z < 0) or np.any(z > p * (1 + 1e-12) + 1e-300):
        raise ValueError("need 0 <= z_i <= p_i for every region")
    if abs(p.sum() - 1.0) > 1e-9:
        raise ValueError(f"region probabilities sum to {p.sum()}, not 1")


def theoretical_variances(spec, p, z) -> tuple[float, float]:
    """Single-sample variances (crude, conditioned) from exact p_i and z_i."""
    phi = phi_array(spec)
    p = np.asarray(p, dtype=float)
    z = np.asarray(z, dtype=float)
    _check_probabilities(p, z)
    mean = float(np.dot(phi, p))
    offset = float(np.dot(phi, z))
    crude = float(np.dot(phi**2, p)) - mean**2
    cond = (1.0 - z.sum()) * float(np.dot(phi**2, p - z)) - (mean - offset) ** 2
    return crude, cond


def variance_difference(spec, p, z) -> float:
    """Crude minus conditioned single-sample variance, as two sums of non-negative terms."""
    phi = phi_array(spec)
    p = np.asarray(p, dtype=float)
    z = np.asarray(z, dtype=float)
    _check_probabilities(p, z)
    gap = (phi[:, None] - phi[None, :]) ** 2
    first = float(np.sum(gap * np.outer(p - z, z)))
    second = float(np.sum(np.triu(gap, k=1) * np.outer(z, z)))
    return first + second


def reduction_condition(spec, p, z) -> bool:
    """Is there a region i with p_i > 0 and a region j with z_j > 0 and Phi_i != Phi_j?"""
    phi = phi_array(spec)
    p = np.asarray(p, dtype=float)
    z = np.asarray(z, dtype=float)
    return any(
        p[i] > 0 and z[j] > 0 and phi[i] != phi[j]
        for i in range(len(phi))
        for j in range(len(phi))
    )


def relative_efficiency(crude: EstimateReport, conditioned: EstimateReport) -> float:
    """(crude variance / conditioned variance) * (crude time / conditioned time).

    Infinite when the conditioned estimate has zero variance.
    """
    if conditioned.variance_of_estimator == 0:
        return math.inf
    return (crude.variance_of_estimator / conditioned.variance_of_estimator) * (
        crude.total_seconds / conditioned.total_seconds
    )
