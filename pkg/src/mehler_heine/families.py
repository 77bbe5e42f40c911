"""Charlier and Meixner polynomial families.

Both families live on the lattice {0, 1, 2, ...}. Each can be evaluated from
its terminating hypergeometric series or from the monic three-term
recurrence ``P_{k+1} = (x - b_k) P_k - c_k P_{k-1}``; the associated
polynomials run the same recurrence from ``P*_0 = 0, P*_1 = 1``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .errors import ConvergenceError, ParameterError, PolyOverflowError
from .specfun import DEFAULT_CONTROL, LogScaled, SeriesControl, pfq

__all__ = [
    "Charlier",
    "Meixner",
    "Family",
    "PolyKind",
    "recurrence_coeffs",
    "eval_poly",
    "eval_poly_scaled",
    "eval_hypergeom",
    "monic_factor",
    "weight_term",
    "weights",
    "step_distribution",
    "moment0",
    "moment",
    "squared_norm",
    "orthogonality_sum",
]


@dataclass(frozen=True)
class Charlier:
    """Charlier family, Poisson weight ``a**k / k!``."""

    a: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0):
            raise ParameterError(f"Charlier needs a > 0, got a={self.a}")


@dataclass(frozen=True)
class Meixner:
    """Meixner family, negative-binomial weight ``(beta)_k c**k / k!``."""

    beta: float
    c: float

    def __post_init__(self):
        if not (math.isfinite(self.beta) and self.beta > 0):
            raise ParameterError(f"Meixner needs beta > 0, got beta={self.beta}")
        if not 0 < self.c < 1:
            raise ParameterError(f"Meixner needs 0 < c < 1, got c={self.c}")


Family = Union[Charlier, Meixner]


class PolyKind(enum.Enum):
    STANDARD = "standard"
    MONIC = "monic"
    ASSOCIATED = "associated"


Coeffs = Callable[[Family, int], "tuple[float, float]"]


def recurrence_coeffs(family: Family, n: int) -> tuple[float, float]:
    """``(b_n, c_n)`` of the monic recurrence."""
    if n < 0:
        raise ParameterError("n must be nonnegative")
    if isinstance(family, Charlier):
        return n + family.a, family.a * n
    beta, c = family.beta, family.c
    return (n + (n + beta) * c) / (1 - c), n * (n + beta - 1) * c / (1 - c) ** 2


_RESCALE = 1e150


def _recurrence(family: Family, n: int, x: complex, associated: bool, coeffs: Coeffs):
    """Run the monic recurrence; returns ``(m, s)`` with ``P_n(x) = m * exp(s)``."""
    if associated:
        if n == 0:
            return 0j, 0.0
        prev, cur, start = 0j, 1 + 0j, 1
    else:
        prev, cur, start = 0j, 1 + 0j, 0
    log_scale = 0.0
    for k in range(start, n):
        b, c = coeffs(family, k)
        prev, cur = cur, (x - b) * cur - c * prev
        big = max(abs(cur), abs(prev))
        if big > _RESCALE:
            prev /= big
            cur /= big
            log_scale += math.log(big)
        elif not math.isfinite(big):
            raise PolyOverflowError("recurrence produced a non-finite value")
    return cur, log_scale


def eval_poly_scaled(
    family: Family, kind: PolyKind, n: int, x, *, coeffs: Coeffs = recurrence_coeffs
) -> tuple[complex, float]:
    """Polynomial value as ``(mantissa, log_scale)``; never overflows.

    The standard kind is divided by :func:`monic_factor` in log space.
    Near the lattice points (see :func:`near_lattice`) the recurrence is
    run in exact rational arithmetic instead.
    """
    if n < 0:
        raise ParameterError("n must be nonnegative")
    x = complex(x)
    if coeffs is recurrence_coeffs and near_lattice(x):
        m, s = _exact_recurrence(family, n, x, kind is PolyKind.ASSOCIATED)
    else:
        m, s = _recurrence(family, n, x, kind is PolyKind.ASSOCIATED, coeffs)
    if kind is PolyKind.STANDARD:
        f = monic_factor(family, n)
        m, s = m * f.sign, s - f.log_mag
    return m, s


LATTICE_WINDOW = 1e-3


def near_lattice(x: complex) -> bool:
    """True within ``LATTICE_WINDOW`` of a support point ``0, 1, 2, ...``.

    At ``x = k`` both the polynomials and their associated ones are small
    solutions of the recurrence while another solution grows much faster,
    so the forward recurrence in binary64 loses about ``eps / |x - k|``
    relative accuracy nearby.
    """
    k = round(x.real)
    return k >= 0 and abs(x - k) < LATTICE_WINDOW


def _exact_coeffs(family: Family, k: int) -> tuple[Fraction, Fraction]:
    if isinstance(family, Charlier):
        a = Fraction(family.a)
        return k + a, a * k
    beta, c = Fraction(family.beta), Fraction(family.c)
    return (k + (k + beta) * c) / (1 - c), k * (k + beta - 1) * c / (1 - c) ** 2


def _exact_recurrence(family: Family, n: int, x: complex, associated: bool):
    """The monic recurrence in exact integer arithmetic.

    The float parameters and ``x`` are exact rationals. With ``L`` a common
    denominator of every ``x - b_k`` and ``c_k``, ``Q_k = L**k P_k`` obeys
    an integer recurrence; the result is rounded once at the end. Returns
    ``(m, s)`` like :func:`_recurrence`.
    """
    if associated and n == 0:
        return 0j, 0.0
    start = 1 if associated else 0
    xr, xi = Fraction(x.real), Fraction(x.imag)
    coeffs = [_exact_coeffs(family, k) for k in range(start, n)]
    L = math.lcm(xr.denominator, xi.denominator, *(f.denominator for bc in coeffs for f in bc))
    v = int(L * xi)
    # (re, im) integer pairs
    prev_r = prev_i = 0
    cur_r, cur_i = (L, 0) if associated else (1, 0)
    for b, c in coeffs:
        u = int(L * (xr - b))
        w = int(L * L * c)
        nxt_r = u * cur_r - v * cur_i - w * prev_r
        nxt_i = u * cur_i + v * cur_r - w * prev_i
        prev_r, prev_i, cur_r, cur_i = cur_r, cur_i, nxt_r, nxt_i
    bits = max(abs(cur_r).bit_length(), abs(cur_i).bit_length())
    if bits == 0:
        return 0j, 0.0
    den = L**n
    # keep 60 leading bits of numerator and denominator; the power of two
    # left over is the only part that goes through a logarithm
    e_num = bits - 60
    e_den = den.bit_length() - 60
    m = complex(_shift(cur_r, e_num), _shift(cur_i, e_num)) / _shift(den, e_den)
    return m, (e_num - e_den) * math.log(2)


def _shift(v: int, e: int) -> float:
    # floor shift: relative perturbation below 2**-59
    return float(v >> e) if e > 0 else float(v << -e)


def eval_poly(
    family: Family, kind: PolyKind, n: int, x, *, coeffs: Coeffs = recurrence_coeffs
) -> complex:
    """Evaluate the polynomial of the given kind by forward recurrence.

    ``coeffs`` swaps in another coefficient source (used for fault injection
    by the check suite). Raises :class:`PolyOverflowError` when the value
    itself is outside binary64; ``asymptotics.scaled_poly`` covers that range.
    """
    m, s = eval_poly_scaled(family, kind, n, x, coeffs=coeffs)
    if m == 0:
        return 0j
    if math.log(abs(m)) + s > 709.7:
        raise PolyOverflowError(f"|P_{n}(x)| exceeds binary64; use scaled_poly")
    return m * math.exp(s)


def eval_hypergeom(family: Family, n: int, x) -> complex:
    """Standard-kind value from the terminating hypergeometric series."""
    if n < 0:
        raise ParameterError("n must be nonnegative")
    if isinstance(family, Charlier):
        return pfq([-n, -complex(x)], [], -1.0 / family.a)
    return pfq([-n, -complex(x)], [family.beta], 1.0 - 1.0 / family.c)


def monic_factor(family: Family, n: int) -> LogScaled:
    """Factor turning the standard polynomial into the monic one.

    ``(-a)**n`` for Charlier and ``(beta)_n (c/(c-1))**n`` for Meixner.
    """
    if n < 0:
        raise ParameterError("n must be nonnegative")
    sign = -1 if n % 2 else 1
    if isinstance(family, Charlier):
        return LogScaled(sign, n * math.log(family.a))
    beta, c = family.beta, family.c
    log_poch = math.lgamma(beta + n) - math.lgamma(beta)
    return LogScaled(sign, log_poch + n * math.log(c / (1 - c)))


def weight_term(family: Family, k: int) -> LogScaled:
    """Jump ``w_k`` of the step distribution at ``t = k``."""
    if k < 0:
        raise ParameterError("k must be nonnegative")
    if isinstance(family, Charlier):
        return LogScaled(1, k * math.log(family.a) - math.lgamma(k + 1))
    beta, c = family.beta, family.c
    return LogScaled(
        1, math.lgamma(beta + k) - math.lgamma(beta) + k * math.log(c) - math.lgamma(k + 1)
    )


def weights(family: Family):
    """Yield ``w_0, w_1, ...`` as floats, by the term-ratio recursion."""
    w = 1.0
    k = 0
    while True:
        yield w
        if isinstance(family, Charlier):
            w *= family.a / (k + 1)
        else:
            w *= (family.beta + k) * family.c / (k + 1)
        k += 1


def step_distribution(family: Family, t: float) -> float:
    """``psi(t) = sum_k w_k u(t - k)``."""
    if t < 0:
        return 0.0
    kmax = math.floor(t)
    total = []
    for k, w in enumerate(weights(family)):
        if k > kmax:
            break
        total.append(w)
    return math.fsum(total)


def moment0(family: Family) -> float:
    """Total mass: ``e**a`` (Charlier) or ``(1-c)**(-beta)`` (Meixner)."""
    if isinstance(family, Charlier):
        return math.exp(family.a)
    return (1 - family.c) ** (-family.beta)


def _weighted_sum(family: Family, f: Callable[[int], float], ctrl: SeriesControl):
    """``sum_k f(k) w_k``; returns ``(value, k_stop)``.

    Stops once ``k >= 20`` and three consecutive terms fall below
    ``1e-18`` times the largest term seen.
    """
    terms = []
    biggest = 0.0
    small = 0
    for k, w in enumerate(weights(family)):
        if k >= ctrl.max_terms:
            break
        term = f(k) * w
        terms.append(term)
        biggest = max(biggest, abs(term))
        if k >= 20 and abs(term) < 1e-18 * biggest:
            small += 1
            if small >= 3:
                return math.fsum(terms), k
        else:
            small = 0
    raise ConvergenceError(f"weighted sum did not settle in {ctrl.max_terms} terms")


def moment(family: Family, r: int, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Moment ``mu_r = sum_k k**r w_k`` by truncated summation (``r = 0`` included)."""
    if r < 0:
        raise ParameterError("r must be nonnegative")
    return _weighted_sum(family, lambda k: float(k) ** r, ctrl)[0]


def squared_norm(family: Family, n: int) -> float:
    """``K_n = sum_k P_n(k)**2 w_k`` for the standard kind, closed form."""
    if isinstance(family, Charlier):
        a = family.a
        return math.exp(a - n * math.log(a) + math.lgamma(n + 1))
    beta, c = family.beta, family.c
    log_k = (
        -n * math.log(c)
        + math.lgamma(n + 1)
        - (math.lgamma(beta + n) - math.lgamma(beta))
        - beta * math.log(1 - c)
    )
    return math.exp(log_k)


def orthogonality_sum(
    family: Family, n: int, m: int, ctrl: SeriesControl = DEFAULT_CONTROL
) -> tuple[float, int]:
    """``sum_k P_n(k) P_m(k) w_k`` for the standard kind and the stopping index."""
    if n < 0 or m < 0:
        raise ParameterError("n and m must be nonnegative")

    def prod(k: int) -> float:
        return (eval_hypergeom(family, n, k) * eval_hypergeom(family, m, k)).real

    return _weighted_sum(family, prod, ctrl)
