"""Exact algorithms for finding point subsets with hereditary order-type properties."""
from .exceptions import *  # noqa: F401,F403
from .geometry import (
    Line,
    OrderType,
    Orientation,
    Point,
    PointSet,
    general_position_indices,
    largest_convex_subset,
    largest_convex_subset_indices,
    lines_through_pairs,
    max_collinear,
    order_type,
    orient,
)
from .patterns import (
    BROKEN_GRID,
    COMPLIANT,
    FENCED_PAIR,
    FOUR_IN_LINE,
    HereditaryProperty,
    Pattern,
    PatternMatcher,
    contains_pattern,
    convex_property,
    detect_compliant_violation,
    find_complete_quadrilaterals,
    has_property,
    lq_property,
)
from .ramsey import compute_ramsey_r, happy_ending_number
from .solvers import (
    SolveRequest,
    SolveResult,
    brute_force_solve,
    classify_property,
    delete_to_avoid,
    kernelize_lq,
    line_cover_solve,
    solve_dispatch,
    solve_disjunction,
)

__version__ = "0.1.0"
