"""
Relative efficiency on square grids
====================================

Corner-to-corner hop distance on 8x8 and 15x15 grids with equal link
reliabilities. The sets come from the randomized search, and the search time
is charged to the conditioned estimator.
"""
import os

from hopperf import RegionSpec, conditioned_estimate, crude_estimate, heuristic_families, relative_efficiency
from hopperf.fixtures import generate_grid

N = int(os.environ.get("DEMO_SAMPLES", 200_000))
SEARCH = float(os.environ.get("DEMO_SECONDS", 2))

for side in (8, 15):
    shortest = 2 * (side - 1)
    # on time, a little late, very late, cut off
    spec = RegionSpec((shortest, shortest + 4), (0.0, 1.0, 3.0, 10.0))
    for re in (0.95, 0.99):
        net = generate_grid(side, re)
        families, sols = heuristic_families(net, spec, "PCCP", max_time=SEARCH, seed=3)
        search = sum(s.elapsed for s in sols)
        crude = crude_estimate(net, spec, N, seed=5)
        cond = conditioned_estimate(net, spec, families, N, seed=6, extra_setup_seconds=search)
        # with few samples the conditioned draws may all land in one region
        ratio = crude.variance_of_estimator / cond.variance_of_estimator if cond.variance_of_estimator else float("inf")
        print(f"{side}x{side} r_e={re}: E[Phi] {crude.point_estimate:.5f} / {cond.point_estimate:.5f}"
              f"  ratio {ratio:7.2f}"
              f"  RE {relative_efficiency(crude, cond):7.2f}")
