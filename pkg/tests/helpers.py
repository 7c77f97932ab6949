"""Random instances and brute-force references shared by the tests."""
from __future__ import annotations

import itertools

import numpy as np

from hopperf import Network, RegionSpec, build_families, validate_cutset, validate_pathset


def random_network(rng: np.random.Generator, max_nodes: int = 10, max_edges: int = 18,
                   low: float = 0.5, high: float = 0.99) -> Network:
    """Connected random multigraph with 2 or 3 terminals."""
    n = int(rng.integers(3, max_nodes + 1))
    pairs = [(int(rng.integers(0, v)), v) for v in range(1, n)]
    m = int(rng.integers(n - 1, max_edges + 1))
    while len(pairs) < m:
        a, b = rng.choice(n, size=2, replace=False)
        pairs.append((int(a), int(b)))
    rel = rng.uniform(low, high, size=len(pairs))
    k = 2 if n < 4 or rng.random() < 0.6 else 3
    terms = rng.choice(n, size=k, replace=False)
    return Network(n, [(a, b, r) for (a, b), r in zip(pairs, rel)], terms.tolist())


def random_spec(rng: np.random.Generator, net: Network) -> RegionSpec:
    count = int(rng.integers(1, 4))
    top = max(count, net.node_count - 1)
    thresholds = sorted(rng.choice(np.arange(1, top + 1), size=count, replace=False).tolist())
    nphi = count + 1 + int(rng.random() < 0.5)
    return RegionSpec(tuple(thresholds), tuple(rng.uniform(0, 10, size=nphi).round(3)))


def _shrink(edges, still_ok, rng):
    """Drop edges in random order while the predicate keeps holding."""
    keep = list(edges)
    for e in rng.permutation(keep).tolist():
        trial = [x for x in keep if x != e]
        if trial and still_ok(trial):
            keep = trial
    return keep


def random_families(rng: np.random.Generator, net: Network, spec: RegionSpec, per_region: int = 2):
    """Valid, region-wise disjoint families found by greedy shrinking from random orders."""
    count = spec.num_regions
    P = [[] for _ in range(count)]
    C = [[] for _ in range(count)]
    m = net.edge_count
    for i in range(count):
        used: set[int] = set()
        if count == 1 or i < count - 1:
            bound = spec.pathset_bound(i)
            for _ in range(per_region):
                free = [e for e in range(m) if e not in used]
                if free and validate_pathset(net, free, bound):
                    p = _shrink(free, lambda s: validate_pathset(net, s, bound), rng)
                    P[i].append(p)
                    used.update(p)
        if i > 0:
            bound = spec.cutset_bound(i)
            for _ in range(per_region):
                free = [e for e in range(m) if e not in used]
                if free and validate_cutset(net, free, bound):
                    c = _shrink(free, lambda s: validate_cutset(net, s, bound), rng)
                    C[i].append(c)
                    used.update(c)
    return build_families(net, spec, P, C)


def z_holds(families, state: dict) -> bool:
    """Direct check of 'some Z_i holds' for a dict edge -> bool."""
    last = families.num_regions - 1
    for i in range(families.num_regions):
        t = any(all(state[e] for e in p) for p in families.pathsets[i])
        k = any(not any(state[e] for e in c) for c in families.cutsets[i])
        if (i == 0 and t) or (i == last and i > 0 and k) or (0 < i < last and t and k):
            return True
    return False


def exact_conditional_law(families) -> np.ndarray:
    """Pr(Omega sub-configuration | not Z) by looping over every state; bit j is edge omega[j]."""
    omega = families.omega
    rel = families.net.reliability
    law = np.zeros(1 << len(omega))
    for bits in itertools.product((0, 1), repeat=len(omega)):
        state = dict(zip(omega, bits))
        if z_holds(families, state):
            continue
        prob = 1.0
        for e, b in state.items():
            prob *= rel[e] if b else 1.0 - rel[e]
        law[sum(b << j for j, b in enumerate(bits))] = prob
    return law / law.sum()


def random_instance(rng: np.random.Generator, max_z: float = 0.999, **kw):
    """(network, spec, families) with z <= max_z, redrawing until it fits."""
    from hopperf import total_z_and_phi

    while True:
        net = random_network(rng, **kw)
        spec = random_spec(rng, net)
        fam = random_families(rng, net, spec)
        try:
            if total_z_and_phi(fam).z <= max_z:
                return net, spec, fam
        except ArithmeticError:
            pass
