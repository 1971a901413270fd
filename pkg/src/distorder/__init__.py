"""Spectral solvers for the distributed-order equation."""

from ._kernels import BACKEND
from .errors import (
    BranchCut,
    DegenerateLattice,
    DegenerateMode,
    DistOrderError,
    GridTooCoarse,
    IndexOutOfRange,
    NonConvergent,
    NonDegeneracyViolated,
    Overflow,
)
from .fractional_operators import (
    GridFunction,
    classical_deriv,
    correction_term,
    distributed_operator,
    gl_deriv,
    gl_deriv_all,
    termwise_deriv,
)
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .solvers import (
    BoundaryProblem,
    CauchyProblem,
    DataFunction,
    SpectralSeries,
    evaluate_series,
    evaluate_series_deriv,
    project_coefficient,
    solve_bvp,
    solve_cauchy,
)
from .special_functions import eval_h, eval_h_err, eval_h_many, reciprocal_factorial
from .spectrum import CharacteristicRoot, OrderInterval, char_fn, mode_fn, mode_inner_product, roots

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
