"""Verification toolkit for generalized metrics and the functions that
preserve them.

Distance tables carry exact rationals, so axiom checks and optimal
relaxation constants are exact; function analysis runs on float grids and
reports three-valued verdicts with witnesses.
"""

from .axioms import (
    check_extended_b,
    check_identity,
    check_triangle,
    check_ultra,
    classify_space,
    minimal_theta,
    optimal_b_constant,
    optimal_weak_ultra_constant,
    verify_as,
)
from .classify import (
    DEFAULT_GRID,
    FnProfile,
    GridSpec,
    classify_fn,
    sample_pairs,
    sample_points,
    verify_plateau,
)
from .config import DEFAULT_DIVERGENCE, REL_TOL, DivergenceConfig, worker_cap
from .dsl import RealFn, eval_exact, eval_fn, exact_capable, parse_fn
from .errors import (
    DomainError,
    EvalError,
    GmetrixError,
    InvalidEntry,
    InvalidS,
    InvalidTheta,
    NonFinite,
    NotATriplet,
    OutOfCodomain,
    OutOfRange,
    ParseError,
    PlateauNotVerified,
    PreconditionViolated,
    SourceClassViolated,
    SpaceFormatError,
    UnsupportedClass,
    UnsupportedKind,
)
from .model import (
    ClassTag,
    DistanceTable,
    Status,
    ThetaTable,
    Verdict,
    Witness,
    canonical_dumps,
    constant_theta,
    dump_space,
    load_space,
    new_distance_table,
    new_theta_table,
    random_space,
    space_from_json,
    space_to_json,
)
from .preservation import (
    BASIS_AMENABILITY,
    BASIS_EB_SUFFICIENT,
    BASIS_QUASI,
    BASIS_TRIPLET_DIVERGENCE,
    BASIS_TRIPLET_SUFFICIENT,
    FUNCTION_CATALOG,
    Budget,
    MembershipReport,
    MembershipStatus,
    SearchWitness,
    SuiteReport,
    counterexample_search,
    membership,
    preserve_check,
    pushforward,
    theorem_suite,
)
from .region import (
    RegionReport,
    RegionSpec,
    emit_region_svg,
    region_bounds,
    region_check,
    render_region_svg,
)
from .triplets import (
    BoundaryStrategy,
    GridStrategy,
    PlanarPoint,
    RandomStrategy,
    Triplet,
    is_s_triplet,
    is_theta_triplet,
    is_triangle_triplet,
    realize_in_plane,
    sample_triplets,
    triplet_constant,
)

__version__ = "0.1.0"

__all__ = [
    "BASIS_AMENABILITY",
    "BASIS_EB_SUFFICIENT",
    "BASIS_QUASI",
    "BASIS_TRIPLET_DIVERGENCE",
    "BASIS_TRIPLET_SUFFICIENT",
    "BoundaryStrategy",
    "Budget",
    "ClassTag",
    "DEFAULT_DIVERGENCE",
    "DEFAULT_GRID",
    "DistanceTable",
    "DivergenceConfig",
    "DomainError",
    "EvalError",
    "FUNCTION_CATALOG",
    "FnProfile",
    "GmetrixError",
    "GridSpec",
    "GridStrategy",
    "InvalidEntry",
    "InvalidS",
    "InvalidTheta",
    "MembershipReport",
    "MembershipStatus",
    "NonFinite",
    "NotATriplet",
    "OutOfCodomain",
    "OutOfRange",
    "ParseError",
    "PlanarPoint",
    "PlateauNotVerified",
    "PreconditionViolated",
    "REL_TOL",
    "RandomStrategy",
    "RealFn",
    "RegionReport",
    "RegionSpec",
    "SearchWitness",
    "SourceClassViolated",
    "SpaceFormatError",
    "Status",
    "SuiteReport",
    "ThetaTable",
    "Triplet",
    "UnsupportedClass",
    "UnsupportedKind",
    "Verdict",
    "Witness",
    "canonical_dumps",
    "check_extended_b",
    "check_identity",
    "check_triangle",
    "check_ultra",
    "classify_fn",
    "classify_space",
    "constant_theta",
    "counterexample_search",
    "dump_space",
    "emit_region_svg",
    "eval_exact",
    "eval_fn",
    "exact_capable",
    "is_s_triplet",
    "is_theta_triplet",
    "is_triangle_triplet",
    "load_space",
    "membership",
    "minimal_theta",
    "new_distance_table",
    "new_theta_table",
    "optimal_b_constant",
    "optimal_weak_ultra_constant",
    "parse_fn",
    "preserve_check",
    "pushforward",
    "random_space",
    "realize_in_plane",
    "region_bounds",
    "region_check",
    "render_region_svg",
    "sample_pairs",
    "sample_points",
    "sample_triplets",
    "space_from_json",
    "space_to_json",
    "theorem_suite",
    "triplet_constant",
    "verify_as",
    "verify_plateau",
    "worker_cap",
]
