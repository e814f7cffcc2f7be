from .points import (
    KINDS,
    MATCHING,
    PERFECT_MATCHING,
    STABLE_SET,
    PointConfiguration,
    lattice_points,
    normalize_kind,
)
from .fibers import (
    Fiber,
    VerificationReport,
    enumerate_fibers,
    fiber,
    fiber_components,
    generator_counts_by_fibers,
    verify_omega_le,
)
from .markov import (
    MarkovBasis,
    MarkovMove,
    OmegaReport,
    graph_omega,
    lattice_kernel_basis,
    markov_basis,
    minimalize,
    omega,
    omega_via_blocks,
)
from .flows import FlowNetwork, flow_lattice_points, flow_polytope_of_bipartite, flow_to_matching
