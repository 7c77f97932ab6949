"""Acceptance checks, one test per criterion. Each prints a single PASS/FAIL line."""
import json
import math

import numpy as np

from helpers import exact_conditional_law, random_instance
from hopperf import (
    HeuristicConfig,
    RegionSpec,
    build_families,
    conditioned_estimate,
    crude_estimate,
    enumerate_exact,
    enumerate_z,
    reduction_condition,
    run_region_heuristic,
    theoretical_variances,
    total_z_and_phi,
    validate_cutset,
    variance_difference,
)
from hopperf.cli import main
from hopperf.events import build_subconfig_table, in_z, make_sampler, set_event_probability, table_region_z
from hopperf.fixtures import antel_fixture, antel_region_spec, generate_grid, grid_node, triangular_reliabilities

GRID1_S = (2, 2)
GRID1_T = (4, 4)


def grid1(seed: int = 2024):
    rel = triangular_reliabilities(112, np.random.default_rng(seed))
    s, t = grid_node(8, *GRID1_S), grid_node(8, *GRID1_T)
    return generate_grid(8, rel, (s, t))


def antel(re):
    net, raw = antel_fixture(re)
    spec = antel_region_spec(re)
    return net, spec, build_families(net, spec, raw["pathsets"], raw["cutsets"])


def test_criterion_1_oracle_equivalence(criterion):
    # 50 random instances, fixed seeds; standard errors are the exact ones from the oracle
    n = 100_000
    worst = 0.0
    misses = []
    for k in range(50):
        net, spec, fam = random_instance(np.random.default_rng(1000 + k))
        exact = enumerate_exact(net, spec, fam)
        var_c, var_k = theoretical_variances(spec, exact.p, exact.z)
        mode = "sequential" if k % 2 else "auto"
        runs = [
            ("crude", crude_estimate(net, spec, n, seed=k), var_c),
            ("conditioned", conditioned_estimate(net, spec, fam, n, seed=k, mode=mode), var_k),
        ]
        for name, rep, var in runs:
            se = math.sqrt(max(var, 0.0) / n)
            gap = abs(rep.point_estimate - exact.expected_phi)
            tol = 3 * se + 1e-12 * (1 + abs(exact.expected_phi))
            worst = max(worst, gap / se if se > 0 else 0.0)
            if gap > tol:
                misses.append(f"instance {k} {name}: {gap / se:.2f} SE")
    ok = not misses
    detail = f"worst deviation {worst:.2f} SE over 100 estimates"
    if misses:
        detail += "; outside 3 SE: " + ", ".join(misses)
    assert criterion(1, ok, detail), detail


def test_criterion_2_z_consistency(criterion):
    notes = []
    ok = True
    for re in (0.9, 0.95, 0.99):
        net, spec, fam = antel(re)
        oracle = enumerate_z(fam)
        factor = np.array(total_z_and_phi(fam).z_i)
        table = np.array(table_region_z(fam))
        mass = 1.0 - build_subconfig_table(fam).total
        gap = max(np.abs(factor - oracle).max(), np.abs(table - oracle).max(),
                  abs(mass - oracle.sum()))
        ok &= gap <= 1e-12
        notes.append(f"re={re}: max gap {gap:.1e}")
        if re == 0.9:
            spot = abs(oracle[1] - 0.00531441) <= 1e-12 and abs(oracle[3] - 0.001999) <= 1e-12
            spot &= abs(factor[1] - 0.00531441) <= 1e-12 and abs(factor[3] - 0.001999) <= 1e-12
            ok &= spot
            notes.append(f"z_1={factor[1]:.12g} z_3={factor[3]:.12g}")
    assert criterion(2, bool(ok), "; ".join(notes))


def _direct_variances(phi, p, z):
    """Variances of one crude draw and one conditioned term, from the two laws directly."""
    mean = np.dot(phi, p)
    crude = np.dot(p, (phi - mean) ** 2)
    zt = z.sum()
    if zt >= 1:
        return crude, 0.0
    law = (p - z) / (1 - zt)
    cmean = np.dot(phi, law)
    return crude, (1 - zt) ** 2 * np.dot(law, (phi - cmean) ** 2)


def test_criterion_3_variance_identity(criterion):
    rng = np.random.default_rng(7)
    worst = 0.0
    bad = []
    for k in range(1000):
        r = int(rng.integers(1, 6))
        p = rng.dirichlet(np.ones(r))
        if k % 5 == 0 and r > 1:
            p[rng.integers(r)] = 0.0
            p /= p.sum()
        z = p * rng.uniform(0, 1, r) * (rng.random(r) < 0.7)
        phi = rng.uniform(0, 10, r).round(1)
        if k % 7 == 0:
            phi[:] = phi[0]
        if k % 11 == 0:
            z[:] = 0.0
        crude, cond = _direct_variances(phi, p, z)
        diff = variance_difference(phi, p, z)
        err = abs(diff - (crude - cond))
        worst = max(worst, err)
        holds = reduction_condition(phi, p, z)
        if err > 1e-12 or diff < 0 or (diff > 0) != holds:
            bad.append(k)
    ok = not bad
    detail = f"1000 instances, max |identity error| {worst:.1e}"
    if bad:
        detail += f", failing instances {bad[:10]}"
    assert criterion(3, ok, detail)


BANDS = {0.9: (9, 20), 0.95: (25, 70), 0.99: (300, math.inf)}


def test_criterion_4_antel_table(criterion):
    n = 1_000_000
    ok = True
    notes = []
    for re, (low, high) in BANDS.items():
        net, spec, fam = antel(re)
        c = crude_estimate(net, spec, n, seed=11)
        k = conditioned_estimate(net, spec, fam, n, seed=12)
        combined = math.sqrt(c.variance_of_estimator + k.variance_of_estimator)
        agree = abs(c.point_estimate - k.point_estimate) <= 3 * combined
        ratio = c.variance_of_estimator / k.variance_of_estimator
        ok &= agree and low <= ratio <= high
        notes.append(f"re={re}: crude {c.point_estimate:.6g} cond {k.point_estimate:.6g} "
                     f"ratio {ratio:.1f}")
    assert criterion(4, bool(ok), "; ".join(notes))


def _small_antel():
    net, _ = antel_fixture(0.9)
    spec = antel_region_spec(0.9)
    fam = build_families(net, spec, {0: [[1, 4, 5, 9]]}, {3: [[3, 4, 11], [1, 8, 15]]})
    return fam


def _small_random():
    rng = np.random.default_rng(55)
    while True:
        net, spec, fam = random_instance(rng, low=0.85, high=0.99)
        if 4 <= len(fam.omega) <= 10 and not fam.is_empty:
            return fam


def test_criterion_5_sampler_law(criterion):
    draws = 1_000_000
    ok = True
    notes = []
    for label, fam in (("antel", _small_antel()), ("random", _small_random())):
        law = exact_conditional_law(fam)
        k = len(fam.omega)
        weights = 1 << np.arange(k)
        for mode in ("table", "sequential"):
            sampler = make_sampler(fam, mode)
            rng = np.random.default_rng(99)
            states = sampler.sample(rng, draws)
            index = states.astype(np.int64) @ weights
            emp = np.bincount(index, minlength=1 << k) / draws
            tv = 0.5 * np.abs(emp - law).sum()
            ups = np.ones((draws, fam.net.edge_count), dtype=bool)
            ups[:, list(fam.omega)] = states
            inside = int(in_z(fam, ups).sum())
            ok &= tv <= 0.01 and inside == 0
            notes.append(f"{label}/{mode} |omega|={k} TV={tv:.4f} in Z={inside}")
    assert criterion(5, bool(ok), "; ".join(notes))


VERSIONS = ("PC", "PCP", "PCC", "PCPP", "PCPC", "PCCP", "PCCC")


def _path_ok(net, path, s, t, low, high):
    if not low <= len(path) <= high:
        return False
    node, seen = s, {s}
    for e in path:
        a, b = net.endpoints(e)
        if node not in (a, b):
            return False
        node = b if node == a else a
        if node in seen:
            return False
        seen.add(node)
    return node == t


def test_criterion_6_heuristic_structure(criterion):
    net = grid1()
    s, t = net.terminals
    spec = RegionSpec((5, 10), (0.0, 1.0, 2.0))
    problems = []
    found = 0
    for version in VERSIONS:
        for seed in range(100):
            cfg = HeuristicConfig(version, max_time=60.0, max_tries=5, seed=seed, max_iterations=4)
            sol = run_region_heuristic(net, s, t, 6, 10, cfg)
            tag = f"{version}/{seed}"
            if any(b < a for a, b in zip(sol.history, sol.history[1:])):
                problems.append(f"{tag}: history not monotone")
            if not sol.pathsets and not sol.cutsets:
                continue
            found += 1
            try:
                build_families(net, spec, {1: sol.pathsets}, {1: sol.cutsets})
            except ValueError as exc:
                problems.append(f"{tag}: {exc}")
                continue
            for p in sol.pathsets:
                if not _path_ok(net, p, s, t, 6, 10):
                    problems.append(f"{tag}: bad path {p}")
            for c in sol.cutsets:
                for e in c:
                    if validate_cutset(net, [x for x in c if x != e], 5):
                        problems.append(f"{tag}: cutset {c} not minimal")
            prob = set_event_probability(net.reliability, sol.pathsets, sol.cutsets, "TK")
            if prob != sol.probability or sol.history[-1] != sol.probability:
                problems.append(f"{tag}: probability bookkeeping")
    ok = not problems and found > 0
    detail = f"{len(VERSIONS) * 100} runs, {found} with a solution, {len(problems)} problems"
    if problems:
        detail += ": " + "; ".join(problems[:5])
    assert criterion(6, ok, detail)


def test_criterion_7_heuristic_quality(criterion):
    net = grid1()
    s, t = net.terminals
    results = {}
    for version in ("PCCP", "PCPC", "PCPP", "PCCC"):
        cfg = HeuristicConfig(version, max_time=40.0, max_tries=5, seed=1)
        results[version] = run_region_heuristic(net, s, t, 6, 10, cfg).probability
        if results[version] >= 5e-5:
            break
    best = max(results.values())
    detail = ", ".join(f"{v}: {p:.4g}" for v, p in results.items())
    assert criterion(7, best >= 5e-5, detail)


def _cli_estimate(tmp_path, tag, *extra):
    out = tmp_path / f"{tag}.json"
    code = main(["estimate", "--graph", "antel", "--re", "0.95", "--sets", "table2",
                 "--samples", "20000", "--out", str(out), *extra])
    assert code == 0
    return json.loads(out.read_text())


def test_criterion_8_determinism(criterion, tmp_path):
    combos = [
        ("--seed", "3", "--workers", "1", "--mode", "table"),
        ("--seed", "3", "--workers", "3", "--mode", "sequential"),
        ("--seed", "8", "--workers", "2", "--mode", "auto"),
    ]
    ok = True
    notes = []
    for i, combo in enumerate(combos):
        a = _cli_estimate(tmp_path, f"a{i}", *combo)
        b = _cli_estimate(tmp_path, f"b{i}", *combo)
        same = all(
            a[m]["point_estimate"] == b[m]["point_estimate"]
            and a[m]["per_region_counts"] == b[m]["per_region_counts"]
            for m in ("crude", "conditioned")
        )
        ok &= same
        notes.append(" ".join(combo[1::2]) + (" identical" if same else " differs"))
    assert criterion(8, bool(ok), "; ".join(notes))
