"""Discriminating orthogonal quantum states under restricted measurements.

The package models two-party (and small multipartite) minimal-error state
discrimination where each party may only apply local projective measurements,
optionally assisted by a shared entangled resource or by a single classical
bit. ``catalog`` holds the studied ensembles, ``protocols`` the measurement
schedules, ``engine`` the exact Born-rule evaluation with MAP decoding, and
``search`` the exhaustive and structured protocol searches.
"""

from .states import (
    ATOL,
    PRUNE_TOL,
    BipartitionSplit,
    Projector,
    PureState,
    apply_local_projector,
    negativity,
    schmidt_coefficients,
    tensor,
)
from .catalog import (
    FAMILY_IDS,
    Ensemble,
    FamilySpec,
    ResourceSpec,
    bell_basis,
    build_family,
    domino_basis,
    ensemble_from_dict,
    ensemble_to_dict,
    eq1,
    eq4,
    eq6,
    eq7,
    eq8,
    eq9,
    load_ensemble,
    mes,
    nmes,
    no_resource,
    save_ensemble,
    subset,
    theta_pair,
    two_bells_and_third,
)
from .protocols import (
    BELL_LABELS,
    CommPlan,
    LocalMeasurement,
    Protocol,
    Schedule,
    bell_measurement,
    bell_vectors,
    build_alpha_prime_protocol,
    build_groisman_protocol,
    build_ictp,
    build_parity_then_bell,
    load_protocol,
    protocol_from_dict,
    protocol_to_dict,
    save_protocol,
)
from .engine import (
    SuccessReport,
    bell_discrimination_formula,
    eq5_formula,
    evaluate,
    evaluate_multicopy,
    groisman_formula,
    lp_baseline_formula,
)
from .search import (
    DimensionProfile,
    GridSearchResult,
    IctpSearchResult,
    MulticopyScheduleResult,
    ProbeResult,
    SearchConfig,
    UnsupportedConfigurationError,
    candidate_bases,
    construct_multicopy_schedule,
    copy_bound,
    find_ictp_protocol,
    grid_search_lp,
    lpse_optimality_probe,
    product_marginals,
)

__version__ = "0.1.0"

__all__ = [
    "ATOL",
    "PRUNE_TOL",
    "BELL_LABELS",
    "FAMILY_IDS",
    "BipartitionSplit",
    "CommPlan",
    "DimensionProfile",
    "Ensemble",
    "FamilySpec",
    "GridSearchResult",
    "IctpSearchResult",
    "LocalMeasurement",
    "MulticopyScheduleResult",
    "ProbeResult",
    "Projector",
    "Protocol",
    "PureState",
    "ResourceSpec",
    "Schedule",
    "SearchConfig",
    "SuccessReport",
    "UnsupportedConfigurationError",
    "apply_local_projector",
    "bell_basis",
    "bell_discrimination_formula",
    "bell_measurement",
    "bell_vectors",
    "build_alpha_prime_protocol",
    "build_family",
    "build_groisman_protocol",
    "build_ictp",
    "build_parity_then_bell",
    "candidate_bases",
    "construct_multicopy_schedule",
    "copy_bound",
    "domino_basis",
    "ensemble_from_dict",
    "ensemble_to_dict",
    "eq1",
    "eq4",
    "eq5_formula",
    "eq6",
    "eq7",
    "eq8",
    "eq9",
    "evaluate",
    "evaluate_multicopy",
    "find_ictp_protocol",
    "grid_search_lp",
    "groisman_formula",
    "load_ensemble",
    "load_protocol",
    "lp_baseline_formula",
    "lpse_optimality_probe",
    "mes",
    "negativity",
    "nmes",
    "no_resource",
    "product_marginals",
    "protocol_from_dict",
    "protocol_to_dict",
    "save_ensemble",
    "save_protocol",
    "schmidt_coefficients",
    "subset",
    "tensor",
    "theta_pair",
    "two_bells_and_third",
]
