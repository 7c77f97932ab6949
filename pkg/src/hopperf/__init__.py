"""Distance-dependent performability of networks with unreliable edges.

Crude and conditioned Monte Carlo estimators of E[Phi], where Phi depends on
the largest hop distance between terminals, plus heuristics that find the
pathsets and cutsets the conditioned estimator needs.
"""
from .edgesets import EdgeSetFamilies, build_families, empty_families, validate_cutset, validate_pathset
from .errors import (
    FamilyNotDisjoint,
    InvalidCutset,
    InvalidPathset,
    OmegaTooLarge,
    OverlapWithinRegion,
    TooManyEdges,
    ZeroConditional,
)
from .estimators import (
    EstimateReport,
    conditioned_estimate,
    crude_estimate,
    reduction_condition,
    relative_efficiency,
    theoretical_variances,
    variance_difference,
)
from .events import make_sampler, region_event_prob, total_z_and_phi
from .fixtures import antel_fixture, antel_region_spec, generate_grid, generate_preferential_extension
from .graph import Network, is_d_connected, max_terminal_distance
from .heuristics import HeuristicConfig, generate_cutset, generate_path, heuristic_families, run_region_heuristic
from .oracle import enumerate_exact, enumerate_z
from .regions import RegionSpec, phi_of, region_of

__version__ = "0.1.0"
