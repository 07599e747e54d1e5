"""Inclusion tests for constrained polynomial zonotopes."""

from .core import (
    ConPolyZonotope,
    LambdaPoint,
    SampleResult,
    SetKind,
    classify,
    evaluate,
    linear_map,
    sample_points,
    validate,
)
from .encode import (
    AlphaCertificate,
    CertificateCheckReport,
    EncodingError,
    FeasibilitySystem,
    InclusionCertificate,
    encode_cor1,
    encode_cz_lp,
    encode_prop1,
    pseudo_inverse,
    verify_certificate,
)
from .oracle import OracleOptions, Witness, falsify_inclusion, membership_distance
from .solve import (
    SolveOptions,
    SolveOutcome,
    Status,
    check_inclusion,
    solve_linear_feasibility,
    solve_nonlinear_feasibility,
)

__all__ = [
    "AlphaCertificate", "CertificateCheckReport", "ConPolyZonotope", "EncodingError",
    "FeasibilitySystem", "InclusionCertificate", "LambdaPoint", "OracleOptions",
    "SampleResult", "SetKind", "SolveOptions", "SolveOutcome", "Status", "Witness",
    "check_inclusion", "classify", "encode_cor1", "encode_cz_lp", "encode_prop1",
    "evaluate", "falsify_inclusion", "linear_map", "membership_distance",
    "pseudo_inverse", "sample_points", "solve_linear_feasibility",
    "solve_nonlinear_feasibility", "validate", "verify_certificate",
]
