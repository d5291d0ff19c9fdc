"""Worst-case to expander-case graph reduction toolkit.

Self-reductions that turn arbitrary graphs into well-connected ones for
matching, vertex cover, clique counting, pattern detection and
dominating set; exact and spectral conductance verifiers; a heuristic
expander decomposition; and a decomposition-routed 4-cycle detector.
All randomness flows through one portable 64-bit generator, so every
construction is reproducible from its seed.
"""

from .conductance import (
    ConductanceCapError,
    SpectralBound,
    cut_conductance,
    exact_conductance,
    fiedler_sweep_order,
    min_side_check,
    spectral_lower_bound,
)
from .decompose import (
    Certificate,
    Decomposition,
    VerificationReport,
    expander_decompose,
    verify_decomposition,
)
from .experiment import (
    ExperimentReport,
    ExperimentSpec,
    render_csv,
    render_json,
    run_experiment,
    write_report,
)
from .fourcycle import (
    FourCycleReport,
    PortalSet,
    count_argument_guard,
    degree_threshold,
    density_forces_cycle,
    ed_wter_4cycle,
    high_degree_scan,
    portal_scan,
    portal_set,
)
from .generators import (
    gen_c4_free,
    gen_clustered,
    gen_complete,
    gen_complete_bipartite,
    gen_cycle,
    gen_gnp,
    gen_grid,
    gen_path,
    gen_petersen,
    gen_planted,
    gen_star,
    gen_subdivided_clique,
    gen_tree,
    named_instance,
)
from .graph import (
    Cut,
    Graph,
    GraphBuilder,
    GraphInputError,
    add_self_loops,
    add_twin,
    boundary,
    connected_components,
    degree,
    induced_subgraph,
    is_connected,
    rooted_spanning_tree,
    spanning_forest,
    strip_self_loops,
    subdivide_edge,
    volume,
)
from .io import (
    EdgeListParseError,
    format_edge_list,
    parse_edge_list,
    parse_edge_list_text,
    write_edge_list,
)
from .layer import (
    LayerBudgetError,
    LayerConfig,
    LayerMode,
    LayerResult,
    attach_layer,
    log2_threshold,
    pad_min_degree,
)
from .reductions import (
    Chunk,
    IdentityViolation,
    PatternError,
    ProblemTag,
    ReductionOutput,
    TreeDecomposition,
    kpartite_blowup,
    recover,
    tree_decompose_small,
    wter_4cycle_direct,
    wter_kclique,
    wter_mcm,
    wter_mds,
    wter_mvc,
    wter_subgraph_iso,
)
from .rng import SplitMix64, derive_seed
from .solvers import (
    SolverAnswer,
    SolverCapError,
    WitnessError,
    check_clique,
    check_dominating_set,
    check_embedding,
    check_fourcycle,
    check_matching,
    check_vertex_cover,
    fourcycle_brute,
    fourcycle_enum,
    kclique_bruteforce,
    kclique_count,
    mcm_bruteforce,
    mcm_exact,
    mds_bruteforce,
    mds_exact,
    mvc_bruteforce,
    mvc_exact,
    subgraph_iso_bruteforce,
    subgraph_iso_detect,
)

__version__ = "0.1.0"
