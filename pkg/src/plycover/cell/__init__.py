"""Per-cell solvers: exact for one or two adjacent corner classes, optimum plus four otherwise."""

from .case12 import solve_case1, solve_case2
from .diagonal import dp_diagonal, precompute_small_d
from .disjoint import DPMemo, dp_disjoint
from .frame import FULL_REGION, BudgetVector, CellFrame, Region
from .instance import (
    CellInstance,
    classify_by_corner,
    is_diagonal_scenario,
    is_disjoint_scenario,
    mirror_x,
    scenario_of,
    squares_meeting,
)
from .search import Case3, budget_search, linear_budget_scan, solve_case3, solve_cell

__all__ = [
    "BudgetVector",
    "Case3",
    "CellFrame",
    "CellInstance",
    "DPMemo",
    "FULL_REGION",
    "Region",
    "budget_search",
    "classify_by_corner",
    "dp_diagonal",
    "dp_disjoint",
    "is_diagonal_scenario",
    "is_disjoint_scenario",
    "linear_budget_scan",
    "mirror_x",
    "precompute_small_d",
    "scenario_of",
    "solve_case1",
    "solve_case2",
    "solve_case3",
    "solve_cell",
    "squares_meeting",
]
