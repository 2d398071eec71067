"""Hardness pipeline: clique to PSI to cubic PSI to yards, and lineup search."""
from .graphs import ColoredGraph, PsiInstance, clique_to_psi, complete_graph, psi_brute_force, psi_to_cubic
from .lineup import (
    Lineup,
    equivalence_check,
    find_lineup,
    find_lineup_bruteforce,
    lineup_assignment,
    lineup_structure_violations,
)
from .verify import verify_yard
from .yard import Row, Yard, assign_row_coordinates, build_fence, build_yard, choose_intervals, yard_magnitude_bound
