"""Rate and distance bounds for locally recoverable codes with t disjoint recovering sets."""

from .bounds import (
    BoundReport,
    base_r_identity_check,
    coloring_probability,
    distance_bound,
    distance_bound_t1,
    expansion_constant,
    rate_bound,
    rate_bound_t1,
    rroot_sandwich,
)
from .code import LinearCode, distance_via_restriction, enumerate_codewords, minimum_distance, restrict
from .constructions import parity_product_code, rate_gap_report, shortened_hamming_6_3
from .field import Matrix, field_new, mat_nullspace_basis, mat_rank, mat_rref
from .graph import (
    RecoveringGraph,
    build_expander_set,
    build_recovering_graph,
    closure,
    distance_bound_coloring,
    expansion_ratio,
)
from .recovery import RecoveringFamily, find_disjoint_recovering_sets, is_recovering_set, locality_profile
from .search import bound_sweep, enumerate_codes, max_distance_with_locality

__version__ = "0.1.0"
