"""Secure domination on ladders, prisms, Möbius ladders and 3-row grids."""

from secdom.constructions import construct_optimal
from secdom.domination import (
    GuardCertificate,
    VertexSet,
    certificate,
    guards,
    is_dominating,
    is_secure_dominating,
)
from secdom.errors import (
    ContractError,
    InvalidSizeError,
    NotApplicableError,
    ParseError,
    SecdomError,
    UnsupportedFamilyError,
)
from secdom.formulas import FormulaResult, gamma_s_formula, upper_bound_formula, winter_formula
from secdom.graphs import (
    Family,
    FamilyInstance,
    Graph,
    build_cycle,
    build_family,
    build_path,
    cartesian_product,
    parse_graph,
    render_graph,
)
from secdom.solver import (
    SolveResult,
    brute_force_gamma_s,
    enumerate_secure_sets,
    solve_gamma,
    solve_gamma_s,
)

__version__ = "0.1.0"
