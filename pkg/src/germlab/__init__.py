"""Singularity invariants of map-germs on isolated complete intersection singularities."""

__version__ = "0.1.0"

from .errors import GenericityFailure, InternalInconsistency, NotApplicable
from .ring import (
    GLOBAL,
    LOCAL,
    LinearChange,
    MapGerm,
    Poly,
    RingCtx,
    RingError,
    VecPoly,
    Weights,
    determinant,
    differentiate,
    exact_divide,
    global_ring,
    jacobian_matrix,
    local_ring,
    minors,
    poly_arith,
    random_linear_change,
    ring_make,
    substitute,
    weighted_homogeneous_weights,
)
from .stdbasis import (
    HilbertSamuelData,
    IdealHandle,
    StdBasisError,
    SubmoduleHandle,
    eliminate,
    hilbert_samuel,
    ideal_ops,
    is_member,
    krull_dim_leading,
    map_preimage,
    mora_normal_form,
    quotient_by_element,
    std_basis,
    subquotient_dim,
    syzygy,
    vs_dimension,
)
from .invariants import (
    IcisGerm,
    MilnorResult,
    codim_Ke,
    milnor_hypersurface,
    milnor_icis,
    ramification_ideal,
    tjurina_hypersurface,
    tjurina_icis,
    validate_icis,
)
from .mond import (
    MondProblem,
    MondReport,
    conductor_lambda,
    fitting_first,
    image_equation,
    jacobian_module_Mg,
    jet_codim_oracle,
    make_problem,
    mond_report,
    mrel_stable_multiplicity,
    torsion_Kg,
)
from .parse import ParseError, parse_poly
from .problem import ProblemFile, format_problem, parse_problem

__all__ = [
    "GLOBAL",
    "GenericityFailure",
    "HilbertSamuelData",
    "IcisGerm",
    "IdealHandle",
    "InternalInconsistency",
    "LOCAL",
    "LinearChange",
    "MapGerm",
    "MilnorResult",
    "MondProblem",
    "MondReport",
    "NotApplicable",
    "ParseError",
    "Poly",
    "ProblemFile",
    "RingCtx",
    "RingError",
    "StdBasisError",
    "SubmoduleHandle",
    "VecPoly",
    "Weights",
    "codim_Ke",
    "conductor_lambda",
    "determinant",
    "differentiate",
    "eliminate",
    "exact_divide",
    "fitting_first",
    "format_problem",
    "global_ring",
    "hilbert_samuel",
    "ideal_ops",
    "image_equation",
    "is_member",
    "jacobian_matrix",
    "jacobian_module_Mg",
    "jet_codim_oracle",
    "krull_dim_leading",
    "local_ring",
    "make_problem",
    "map_preimage",
    "milnor_hypersurface",
    "milnor_icis",
    "minors",
    "mond_report",
    "mora_normal_form",
    "mrel_stable_multiplicity",
    "parse_poly",
    "parse_problem",
    "poly_arith",
    "quotient_by_element",
    "ramification_ideal",
    "random_linear_change",
    "ring_make",
    "std_basis",
    "subquotient_dim",
    "substitute",
    "syzygy",
    "tjurina_hypersurface",
    "tjurina_icis",
    "torsion_Kg",
    "validate_icis",
    "vs_dimension",
    "weighted_homogeneous_weights",
]
