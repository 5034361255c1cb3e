"""Exact Hilbert polynomials of homogeneous spaces, their sections and covers,
with certified root localization for the canonical-strip family of hypotheses."""

from .ratpoly import (
    ConsistencyError,
    RatPoly,
    SturmCertificate,
    even_odd_split,
    is_squarefree,
    poly_gcd,
    squarefree_parts,
    sturm_count,
    symmetry_center,
)
from .root_system import (
    MarkedSystem,
    Root,
    RootSystem,
    SimpleType,
    all_simple_types,
    build_root_system,
    canonicalize,
    extremal_roots,
    index_formulas,
    level_of,
    mark,
    marked,
    rho_pair,
)
from .hilbert import HilbertData, LevelTable, degree_of, expand, hilbert_gp, validate
from .varieties import (
    AbelianSpec,
    abelian_ci,
    abelian_spec_from_json,
    complete_intersection,
    double_cover,
    pell,
    section_step,
)
from .verify import (
    ApproxRoot,
    LineCheck,
    StripReport,
    approx_roots,
    check_line,
    strip_report,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianSpec",
    "ApproxRoot",
    "ConsistencyError",
    "HilbertData",
    "LevelTable",
    "LineCheck",
    "MarkedSystem",
    "RatPoly",
    "Root",
    "RootSystem",
    "SimpleType",
    "StripReport",
    "SturmCertificate",
    "abelian_ci",
    "abelian_spec_from_json",
    "all_simple_types",
    "approx_roots",
    "build_root_system",
    "canonicalize",
    "check_line",
    "complete_intersection",
    "degree_of",
    "double_cover",
    "even_odd_split",
    "expand",
    "extremal_roots",
    "hilbert_gp",
    "index_formulas",
    "is_squarefree",
    "level_of",
    "mark",
    "marked",
    "pell",
    "poly_gcd",
    "rho_pair",
    "section_step",
    "squarefree_parts",
    "strip_report",
    "sturm_count",
    "symmetry_center",
    "validate",
]
