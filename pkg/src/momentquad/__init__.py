"""Gauss quadrature rules for user-chosen weights, from closed-form moments.

Build an n-point rule for any weight function whose raw moments have a
closed form, by the moment-determinant route in arbitrary-precision
arithmetic: Hankel determinants give the three-term recurrence, the
monic orthogonal polynomial's roots give the nodes, and squared Lagrange
basis polynomials integrated via the moments give the weights.  A
precision ladder re-runs the pipeline at increasing bit counts and
certifies when the binary64 output has stabilized.

Quick start::

    from momentquad import scaled_chi, LadderConfig, run_ladder

    report = run_ladder(scaled_chi(m=2), LadderConfig(n=5))
    report.raise_for_status()
    print(report.final_nodes, report.final_weights)
"""

from .errors import (
    BracketCountMismatch,
    DuplicateName,
    EmptyIntersection,
    IllConditioned,
    InvalidParameter,
    LadderInconclusive,
    MomentQuadError,
    NegativeVariance,
    NoConvergence,
    NonPositiveWeight,
    RungFailed,
    SingularMatrix,
    UnknownWeight,
)
from .hankel import RecurrenceCoeffs, recursion_coeffs
from .ladder import (
    LadderConfig,
    LadderReport,
    RungResult,
    build_rule,
    default_b1,
    run_ladder,
)
from .moments import (
    MomentSequence,
    WeightSpec,
    gen_laguerre,
    hermite,
    legendre,
    moment,
    moment_sequence,
    register_weight,
    registered_families,
    scaled_chi,
    validate_spec,
)
from .mp import (
    BigReal,
    MpMatrix,
    det_lu,
    format_decimal,
    mpf,
    sig_digits_for_bits,
    to_double,
    working_precision,
)
from .orthopoly import Polynomial, monic_sequence, poly_derivative, poly_eval, poly_mul
from .rootfind import (
    RootBracket,
    brent_refine,
    clip_to_support,
    isolate_roots,
    laguerre_bounds,
    nodes,
    refine_tolerance,
)
from .weights import QuadratureRule, lagrange_basis, weights_from_nodes

__version__ = "0.1.0"

__all__ = [
    "BigReal",
    "BracketCountMismatch",
    "DuplicateName",
    "EmptyIntersection",
    "IllConditioned",
    "InvalidParameter",
    "LadderConfig",
    "LadderInconclusive",
    "LadderReport",
    "MomentQuadError",
    "MomentSequence",
    "MpMatrix",
    "NegativeVariance",
    "NoConvergence",
    "NonPositiveWeight",
    "Polynomial",
    "QuadratureRule",
    "RecurrenceCoeffs",
    "RootBracket",
    "RungFailed",
    "RungResult",
    "SingularMatrix",
    "UnknownWeight",
    "WeightSpec",
    "brent_refine",
    "build_rule",
    "clip_to_support",
    "default_b1",
    "det_lu",
    "format_decimal",
    "gen_laguerre",
    "hermite",
    "isolate_roots",
    "lagrange_basis",
    "laguerre_bounds",
    "legendre",
    "moment",
    "moment_sequence",
    "monic_sequence",
    "mpf",
    "nodes",
    "poly_derivative",
    "poly_eval",
    "poly_mul",
    "recursion_coeffs",
    "refine_tolerance",
    "register_weight",
    "registered_families",
    "run_ladder",
    "scaled_chi",
    "sig_digits_for_bits",
    "to_double",
    "validate_spec",
    "weights_from_nodes",
    "working_precision",
]
