"""Exact arithmetic of integral cubic forms and threefold contraction bookkeeping."""

from .errors import (
    BoundViolation,
    Cubic3Error,
    DimensionMismatch,
    NonHomogeneousDegree3,
    ParseError,
    RankError,
    ShapeError,
)
from .families import example_blowup_p3, pell_family, pell_solutions
from .forms import (
    CubicForm,
    act,
    build_from_intersections,
    content,
    evaluate_all,
    format_form,
    hessian_rank,
    is_nondegenerate,
    parse_form,
    restrict,
)
from .invariants import (
    aronhold_ST,
    binary_discriminant,
    discriminant_divides,
    singular_point_search,
    ternary_discriminant,
)
from .mmp import (
    Basket,
    ThreefoldState,
    basket_stats,
    blowup_curve,
    chi_riemann_roch,
    contract_to_curve,
    contract_to_point,
    simulate,
    topological_bounds,
)
from .reduction import (
    ReducedTriple,
    detect_reduced,
    enumerate_binary_triples,
    estimate_S,
    find_reduced_triples,
    low_rank_points,
    normalize_line,
    point_contraction_extract,
    reduced_triple_classes,
    triples_equivalent,
)

__version__ = "0.1.0"
