"""Charlier and Meixner polynomials, their Mehler-Heine limits, Stieltjes
transforms and zeros, in binary64."""

from .asymptotics import (
    ConvergenceReport,
    ScaledPolyValue,
    carleman_diag,
    convergence_report,
    markov_ratio,
    mh_limit,
    mh_limit_beta_form,
    scaled_poly,
    stieltjes,
    stieltjes_direct,
    stieltjes_entire,
    tannery_bounds,
)
from .errors import (
    ConvergenceError,
    DomainError,
    MehlerHeineError,
    ParameterError,
    PoleError,
    PolyOverflowError,
    WindowError,
)
from .families import (
    Charlier,
    Meixner,
    PolyKind,
    eval_hypergeom,
    eval_poly,
    eval_poly_scaled,
    monic_factor,
    moment,
    moment0,
    orthogonality_sum,
    recurrence_coeffs,
    squared_norm,
    weight_term,
)
from .specfun import LogScaled, SeriesControl, gamma_star, inc_beta, log_gamma, pfq, pochhammer, recip_gamma
from .zeros import BracketConfig, JacobiMatrix, ZeroSet, jacobi_matrix, limit_zeros, poly_zeros, zero_convergence

__version__ = "0.1.0"
