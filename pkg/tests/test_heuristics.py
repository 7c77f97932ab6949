from collections import Counter

import numpy as np
import pytest

from hopperf import (
    HeuristicConfig,
    RegionSpec,
    generate_cutset,
    generate_path,
    heuristic_families,
    max_terminal_distance,
    run_region_heuristic,
    validate_cutset,
)
from hopperf.fixtures import antel_fixture, generate_grid, grid_node
from hopperf.heuristics import shake_distances


def grid(side=6):
    return generate_grid(side, 0.95, (grid_node(side, 1, 1), grid_node(side, 3, 3)))


def walk(net, path, s):
    node = s
    for e in path:
        a, b = net.endpoints(e)
        node = b if node == a else a
    return node


@pytest.mark.parametrize("l1,l2", [(4, 4), (4, 8), (6, 10)])
def test_paths_respect_bounds(l1, l2):
    net = grid()
    s, t = net.terminals
    rng = np.random.default_rng(0)
    lengths = []
    for _ in range(60):
        p = generate_path(net, s, t, l1, l2, rng)
        if p is None:
            continue
        assert l1 <= len(p) <= l2 and len(set(p)) == len(p)
        assert walk(net, p, s) == t
        assert max_terminal_distance(net, p) <= l2
        lengths.append(len(p))
    assert lengths


def test_path_avoids_forbidden_edges():
    net = grid()
    s, t = net.terminals
    rng = np.random.default_rng(1)
    forbidden = set(net.incident_edges(s)[:2])
    for _ in range(20):
        p = generate_path(net, s, t, 4, 8, rng, forbidden=forbidden)
        assert p is None or not forbidden & set(p)


def test_shake_keeps_values():
    rng = np.random.default_rng(2)
    d = np.array([0, 1, 1, 2, 3, np.inf, np.inf, 5.0])
    out = shake_distances(d, rng)
    assert Counter(out.tolist()) == Counter(d.tolist())
    assert np.isinf(out[5]) and np.isinf(out[6])


def test_cutsets_are_minimal_and_avoid_h():
    net = grid()
    s, t = net.terminals
    rng = np.random.default_rng(3)
    H = set(generate_path(net, s, t, 6, 8, rng) or [])
    for ell, avoid in ((4, H), (5, H), (None, set())):
        c = generate_cutset(net, s, t, ell, avoid, rng)
        assert c is not None and not avoid & set(c)
        assert validate_cutset(net, c, ell)
        for e in c:
            assert not validate_cutset(net, [x for x in c if x != e], ell)


def test_cutset_impossible_when_h_holds_a_short_path():
    net = grid()
    s, t = net.terminals
    rng = np.random.default_rng(4)
    short = generate_path(net, s, t, 4, 4, rng)
    assert generate_cutset(net, s, t, 4, short, rng) is None
    assert generate_cutset(net, s, t, 3, short, rng) is not None


def test_config_validation():
    with pytest.raises(ValueError):
        HeuristicConfig("PX")
    with pytest.raises(ValueError):
        HeuristicConfig("CP")
    with pytest.raises(ValueError):
        HeuristicConfig("PC", max_tries=0)
    assert HeuristicConfig("pccp").version == "PCCP"
    assert HeuristicConfig("PPP").kind == "T" and HeuristicConfig("CC").kind == "K"


def test_seeded_runs_repeat():
    net = grid()
    s, t = net.terminals
    cfg = HeuristicConfig("PCPC", seed=9, max_iterations=15)
    a = run_region_heuristic(net, s, t, 5, 7, cfg)
    b = run_region_heuristic(net, s, t, 5, 7, cfg)
    assert (a.pathsets, a.cutsets, a.history) == (b.pathsets, b.cutsets, b.history)
    assert a.iterations == 15
    assert all(x <= y for x, y in zip(a.history, a.history[1:]))


def test_families_for_every_region():
    net = grid()
    spec = RegionSpec((4, 6), (0.0, 1.0, 2.0, 4.0))
    fam, sols = heuristic_families(net, spec, "PCCP", max_iterations=10, seed=5)
    assert len(sols) == 4
    assert fam.pathsets[0] and fam.cutsets[3]
    assert not fam.pathsets[3] and not fam.cutsets[0]


def test_needs_two_terminals():
    net, _ = antel_fixture()
    with pytest.raises(ValueError):
        heuristic_families(net.with_terminals([4, 14, 0]), RegionSpec((5,), (0, 1)))
