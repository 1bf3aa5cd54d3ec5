"""Relative oscillation theory for Jacobi matrices.

Counts eigenvalue differences of two Jacobi operators from the weighted sign
changes of a modified Wronskian, with independent spectral oracles for
cross-checking.  Exact rational arithmetic is the default; a float mode with
exponent tracking handles large sizes.
"""

from .coeffs import (
    Coefficients,
    CoefficientFormatError,
    InvalidCoefficients,
    InvalidRange,
    JacobiMatrixView,
    coefficients_from_dict,
    coefficients_from_json,
    coefficients_to_json,
    make_coefficients,
    matrix_of,
    random_coefficients,
    validate,
)
from .pruefer import InconsistentSigns, pruefer_of
from .recurrence import SolutionPath, count_nodes, is_node, solve, solve_custom, solve_minus, solve_plus
from .relative import (
    CheckOutcome,
    CountReport,
    MainVariant,
    Orientation,
    PreconditionUnverified,
    comparison_I_check,
    comparison_II_check,
    concatenation_check,
    corollary_two_nodes_check,
    count_in_interval,
    extension_invariance_check,
    nodes_vs_wronskian_check,
    relative_count,
    scaling_invariance_check,
    spectral_difference,
    triangle_check,
    verify_main,
)
from .scalar import EXACT, FLOAT, ScaledFloat, SignUncertain
from .spectral import NoConvergence, Spectrum, count_below, count_window, eig_all, is_eigenvalue
from .wronskian import (
    Convention,
    WronskianPath,
    delta_path,
    greens_residual,
    interval_count,
    interval_count_via_delta,
    mark_via_pruefer,
    weighted_node_mark,
    wronskian_path,
)

__version__ = "0.1.0"
