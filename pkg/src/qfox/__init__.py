"""Quandle colorings of knot and link diagrams.

Exact computation of reduced one-variable polynomial invariants, coloring
spaces over linear quandles, and minimum-color bounds, driven by PD codes.
"""

from .bounds import (
    BoundReport,
    Lemma31Value,
    applicability,
    base_m_digits,
    improved_lower_bound,
    is_odd_prime,
    kl_lower_bound,
    lemma31_value,
    lspace_pattern_check,
    prime_scan,
    require_odd_prime,
    smallest_prime_factor,
)
from .coloring import (
    CollapseReport,
    Coloring,
    QuandleParams,
    collapse_and_check,
    coloring_from_anchors,
    coloring_matrix,
    enumerate_colorings_brute,
    is_nontrivially_colorable,
    kernel_basis,
    kh_check,
    kh_witness,
    min_colors_on_diagram,
    quandle_op,
    quandle_op_inv,
    verify_coloring,
)
from .diagram import (
    Crossing,
    Diagram,
    PdCode,
    build_diagram,
    get_diagram,
    load_registry,
    parse_pd,
    relabel_arcs,
    render_pd,
    validate,
)
from .errors import (
    BoundsError,
    ColoringError,
    CompositeValueError,
    DiagramError,
    InexactDivisionError,
    NormalizationError,
    PdSyntaxError,
    QfoxError,
    RegistryError,
)
from .families import (
    PretzelParams,
    TorusParams,
    braid_closure,
    pretzel_alexander,
    pretzel_diagram,
    pretzel_m2_coloring,
    pretzel_mincol_report,
    torus_alexander,
    torus_diagram,
    torus_interval,
    torus_mincol_interval,
)
from .laurent import (
    AlexMatrix,
    LaurentPoly,
    alexander_matrix,
    exact_div,
    first_minor,
    parse_poly,
    reduce_normalize,
    unit_equivalent,
)

__version__ = "0.1.0"

__all__ = [
    "AlexMatrix",
    "BoundReport",
    "BoundsError",
    "CollapseReport",
    "Coloring",
    "ColoringError",
    "CompositeValueError",
    "Crossing",
    "Diagram",
    "DiagramError",
    "InexactDivisionError",
    "LaurentPoly",
    "Lemma31Value",
    "NormalizationError",
    "PdCode",
    "PdSyntaxError",
    "PretzelParams",
    "QfoxError",
    "QuandleParams",
    "RegistryError",
    "TorusParams",
    "alexander_matrix",
    "applicability",
    "base_m_digits",
    "braid_closure",
    "build_diagram",
    "collapse_and_check",
    "coloring_from_anchors",
    "coloring_matrix",
    "enumerate_colorings_brute",
    "exact_div",
    "first_minor",
    "get_diagram",
    "improved_lower_bound",
    "is_nontrivially_colorable",
    "is_odd_prime",
    "kernel_basis",
    "kh_check",
    "kh_witness",
    "kl_lower_bound",
    "lemma31_value",
    "load_registry",
    "lspace_pattern_check",
    "min_colors_on_diagram",
    "parse_pd",
    "parse_poly",
    "pretzel_alexander",
    "pretzel_diagram",
    "pretzel_m2_coloring",
    "pretzel_mincol_report",
    "prime_scan",
    "quandle_op",
    "quandle_op_inv",
    "reduce_normalize",
    "relabel_arcs",
    "render_pd",
    "require_odd_prime",
    "smallest_prime_factor",
    "torus_alexander",
    "torus_diagram",
    "torus_interval",
    "torus_mincol_interval",
    "unit_equivalent",
    "validate",
    "verify_coloring",
]
