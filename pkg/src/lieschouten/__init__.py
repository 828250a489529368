"""Exact curvature and algebraic Schouten soliton toolkit for
three-dimensional Lorentzian Lie groups.

The package computes, entirely in exact rational arithmetic, the
Levi-Civita, canonical, and Kobayashi-Nomizu connections on the seven
left-invariant Lorentzian Lie algebra families g1..g7 (and on custom
three-dimensional algebras), derives their Ricci/Schouten data, builds the
derivation systems characterizing algebraic Schouten solitons, and checks
every catalogued classification case against them.
"""

from .algebras import (
    FAMILY_IDS,
    LieAlgebraFamily,
    MetricSignature,
    ParameterPoint,
    StructureConstants,
    bracket,
    build_family,
    custom_family,
    jacobi_residuals,
    load_family,
    sample_parameters,
)
from .catalog import Catalog, CatalogError, load_catalog, verify_all
from .geometry import (
    CANONICAL,
    CONNECTION_KINDS,
    KOBAYASHI_NOMIZU,
    LEVI_CIVITA,
    BilinearForm,
    ConnectionCoefficients,
    CurvatureTensor,
    OperatorMatrix,
    canonical_connection,
    connection,
    curvature,
    kobayashi_nomizu,
    levi_civita,
    metric_compatibility_residual,
    nabla_j,
    ricci_form,
    ricci_operator,
    ricci_pipeline,
    scalar_curvature,
    schouten_form,
    symmetrize,
    torsion,
)
from .poly import (
    DEFAULT_TABLE,
    DEFAULT_VARIABLES,
    ParseError,
    Polynomial,
    PolynomialError,
    VariableTable,
    parse_polynomial,
)
from .soliton import (
    CSolution,
    ScanReport,
    SolitonSystem,
    TheoremCase,
    VerificationReport,
    derivation_residuals,
    negative_control,
    scan,
    serialize_system,
    soliton_system,
    solve_for_c,
    verify_case,
)

__all__ = [
    "FAMILY_IDS",
    "LieAlgebraFamily",
    "MetricSignature",
    "ParameterPoint",
    "StructureConstants",
    "bracket",
    "build_family",
    "custom_family",
    "jacobi_residuals",
    "load_family",
    "sample_parameters",
    "Catalog",
    "CatalogError",
    "load_catalog",
    "verify_all",
    "CANONICAL",
    "CONNECTION_KINDS",
    "KOBAYASHI_NOMIZU",
    "LEVI_CIVITA",
    "BilinearForm",
    "ConnectionCoefficients",
    "CurvatureTensor",
    "OperatorMatrix",
    "canonical_connection",
    "connection",
    "curvature",
    "kobayashi_nomizu",
    "levi_civita",
    "metric_compatibility_residual",
    "nabla_j",
    "ricci_form",
    "ricci_operator",
    "ricci_pipeline",
    "scalar_curvature",
    "schouten_form",
    "symmetrize",
    "torsion",
    "DEFAULT_TABLE",
    "DEFAULT_VARIABLES",
    "ParseError",
    "Polynomial",
    "PolynomialError",
    "VariableTable",
    "parse_polynomial",
    "CSolution",
    "ScanReport",
    "SolitonSystem",
    "TheoremCase",
    "VerificationReport",
    "derivation_residuals",
    "negative_control",
    "scan",
    "serialize_system",
    "soliton_system",
    "solve_for_c",
    "verify_case",
]

__version__ = "0.1.0"
