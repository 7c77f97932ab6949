import math

import numpy as np
import pytest

from helpers import random_instance
from hopperf import (
    Network,
    RegionSpec,
    build_families,
    conditioned_estimate,
    crude_estimate,
    empty_families,
    enumerate_exact,
    reduction_condition,
    relative_efficiency,
    theoretical_variances,
    variance_difference,
)


def two_edge_series(r=0.8):
    return Network(3, [(0, 1, r), (1, 2, r)], [0, 2])


def test_crude_on_series_pair():
    net = two_edge_series()
    spec = RegionSpec((2,), (0.0, 1.0))
    rep = crude_estimate(net, spec, 200_000, seed=4)
    p_down = 1 - 0.8**2
    assert abs(rep.point_estimate - p_down) < 4 * math.sqrt(p_down * (1 - p_down) / 200_000)
    assert sum(rep.per_region_counts) == 200_000
    assert rep.variance_of_estimator == pytest.approx(p_down * (1 - p_down) / 200_000, rel=0.05)


def test_conditioned_is_exact_when_z_covers_a_region():
    # Z_0 = both edges up, Z_1 = edge 0 down: the rest (edge 0 up, edge 1 down) is all region 1
    net = two_edge_series()
    spec = RegionSpec((2,), (0.0, 1.0))
    fam = build_families(net, spec, {0: [[0, 1]]}, {1: [[0]]})
    rep = conditioned_estimate(net, spec, fam, 1000, seed=1)
    assert rep.point_estimate == pytest.approx(1 - 0.8**2, abs=1e-15)
    assert rep.variance_of_estimator == 0.0


def test_empty_families_warn():
    net = two_edge_series()
    spec = RegionSpec((2,), (0.0, 1.0))
    with pytest.warns(UserWarning, match="NoUsefulSets"):
        rep = conditioned_estimate(net, spec, empty_families(net, spec), 1000)
    assert rep.z == 0.0 and "NoUsefulSets" in rep.notes


def test_rejects_zero_samples():
    net = two_edge_series()
    spec = RegionSpec((2,), (0.0, 1.0))
    with pytest.raises(ValueError):
        crude_estimate(net, spec, 0)
    with pytest.raises(ValueError):
        conditioned_estimate(net, spec, empty_families(net, spec), 0)


def test_workers_deterministic_and_check_z():
    net, spec, fam = random_instance(np.random.default_rng(21))
    a = conditioned_estimate(net, spec, fam, 50_000, seed=3, workers=3, check_z=True)
    b = conditioned_estimate(net, spec, fam, 50_000, seed=3, workers=3, check_z=True)
    assert a.point_estimate == b.point_estimate
    assert a.per_region_counts == b.per_region_counts
    c = crude_estimate(net, spec, 50_000, seed=3, workers=2)
    d = crude_estimate(net, spec, 50_000, seed=3, workers=2)
    assert c.point_estimate == d.point_estimate


def test_empirical_variance_tracks_theory():
    net, spec, fam = random_instance(np.random.default_rng(8))
    exact = enumerate_exact(net, spec, fam)
    vc, vk = theoretical_variances(spec, exact.p, exact.z)
    n = 200_000
    c = crude_estimate(net, spec, n, seed=1)
    k = conditioned_estimate(net, spec, fam, n, seed=2)
    assert c.variance_of_estimator * n == pytest.approx(vc, rel=0.05)
    if vk > 1e-6:
        assert k.variance_of_estimator * n == pytest.approx(vk, rel=0.05)
    assert vc - vk == pytest.approx(variance_difference(spec, exact.p, exact.z), abs=1e-12)


def test_variance_difference_examples():
    # two regions, z only in the first: (Phi_1 - Phi_0)^2 * (p_1 - z_1) * z_0
    assert variance_difference([0, 1], [0.5, 0.5], [0.25, 0.0]) == pytest.approx(0.125)
    assert variance_difference([3, 3], [0.5, 0.5], [0.25, 0.25]) == 0.0
    assert not reduction_condition([3, 3], [0.5, 0.5], [0.25, 0.25])
    assert reduction_condition([0, 1], [0.5, 0.5], [0.25, 0.0])
    with pytest.raises(ValueError):
        variance_difference([0, 1], [0.5, 0.5], [0.6, 0.0])


def test_relative_efficiency_formula():
    net = Network(3, [(0, 2, 0.7), (0, 1, 0.7), (1, 2, 0.7)], [0, 2])
    spec = RegionSpec((1, 2), (0.0, 2.0, 5.0))
    c = crude_estimate(net, spec, 1000)
    k = conditioned_estimate(net, spec, build_families(net, spec, {0: [[0]]}), 1000)
    assert k.variance_of_estimator > 0
    expect = (c.variance_of_estimator / k.variance_of_estimator) * (c.total_seconds / k.total_seconds)
    assert relative_efficiency(c, k) == expect
    pair = two_edge_series()
    pair_spec = RegionSpec((2,), (0.0, 1.0))
    exact = conditioned_estimate(pair, pair_spec, build_families(pair, pair_spec, {0: [[0, 1]]}), 100)
    assert exact.variance_of_estimator == 0.0
    assert relative_efficiency(crude_estimate(pair, pair_spec, 100), exact) == math.inf
