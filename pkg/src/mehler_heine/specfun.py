"""Scalar special functions.

Pochhammer symbols, log-gamma and reciprocal gamma for complex arguments,
generalized hypergeometric series, the entire incomplete gamma function and
the incomplete beta function. Everything works in binary64 on Python
``complex`` scalars; real inputs come back as complex with zero imaginary part.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import ConvergenceError, ParameterError, PoleError

__all__ = [
    "LogScaled",
    "SeriesControl",
    "DEFAULT_CONTROL",
    "pochhammer",
    "log_gamma",
    "recip_gamma",
    "sinpi",
    "pfq",
    "gamma_star",
    "inc_beta",
    "is_nonpositive_integer",
]


@dataclass(frozen=True)
class LogScaled:
    """Real number stored as ``sign * exp(log_mag)``.

    Used for factorial-sized factors such as ``(-a)**n`` or ``(beta)_n``
    that leave the binary64 range long before the quantities built from
    them do.
    """

    sign: int
    log_mag: float

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ParameterError(f"sign must be -1, 0 or 1, got {self.sign}")
        if (self.sign == 0) != (self.log_mag == -math.inf):
            raise ParameterError("sign 0 must pair with log_mag == -inf")

    @classmethod
    def from_real(cls, value: float) -> "LogScaled":
        if value == 0:
            return cls(0, -math.inf)
        return cls(1 if value > 0 else -1, math.log(abs(value)))

    @classmethod
    def zero(cls) -> "LogScaled":
        return cls(0, -math.inf)

    def to_real(self) -> float:
        """Convert back to float; raises OverflowError past the binary64 range."""
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_mag)

    def __mul__(self, other: "LogScaled") -> "LogScaled":
        if self.sign == 0 or other.sign == 0:
            return LogScaled.zero()
        return LogScaled(self.sign * other.sign, self.log_mag + other.log_mag)

    def __truediv__(self, other: "LogScaled") -> "LogScaled":
        if other.sign == 0:
            raise ZeroDivisionError("division by LogScaled zero")
        if self.sign == 0:
            return LogScaled.zero()
        return LogScaled(self.sign * other.sign, self.log_mag - other.log_mag)

    def __neg__(self) -> "LogScaled":
        return LogScaled(-self.sign, self.log_mag)

    def __float__(self) -> float:
        return self.to_real()


@dataclass(frozen=True)
class SeriesControl:
    """Stopping rule for infinite series.

    A series stops once ``consecutive_small`` terms in a row satisfy
    ``|term| <= rel_tol * |partial sum|`` while the terms are non-increasing.
    """

    rel_tol: float = 1e-15
    max_terms: int = 10000
    consecutive_small: int = 3

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ParameterError("rel_tol must be positive")
        if self.max_terms < 1 or self.consecutive_small < 1:
            raise ParameterError("max_terms and consecutive_small must be >= 1")


DEFAULT_CONTROL = SeriesControl()


def is_nonpositive_integer(u: complex) -> bool:
    u = complex(u)
    return u.imag == 0 and u.real <= 0 and u.real == math.floor(u.real)


def pochhammer(u, k: int):
    """Rising factorial ``u (u+1) ... (u+k-1)``.

    The type of ``u`` is preserved, so integer input gives an exact integer.
    """
    if k < 0:
        raise ParameterError("k must be nonnegative")
    return math.prod((u + j for j in range(k)), start=1)


# Bernoulli-number coefficients B_2k / (2k (2k-1)), k = 1..8.
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
_STIRLING_MIN = 15.0
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _stirling(z: complex) -> complex:
    w = 1.0 / z
    w2 = w * w
    acc = 0j
    for coef in reversed(_STIRLING):
        acc = acc * w2 + coef
    return (z - 0.5) * cmath.log(z) - z + _HALF_LOG_2PI + acc * w


def log_gamma(z) -> complex:
    """Principal branch of ``log Gamma(z)``.

    Real arguments go through ``math.lgamma``. Complex ones use the Stirling
    series for ``Re z >= 15`` (or large ``|Im z|``) and the upward shift
    ``lnG(z) = lnG(z+m) - sum log(z+k)`` otherwise. The branch cut runs
    along the negative real axis; real negative arguments are taken on its
    upper side, which only changes the imaginary part by multiples of ``pi``.
    """
    z = complex(z)
    if is_nonpositive_integer(z):
        raise PoleError(f"log_gamma has a pole at {z.real:g}")
    if z.imag == 0:
        x = z.real
        phase = 0.0 if x > 0 else -math.pi * math.ceil(-x)
        return complex(math.lgamma(x), phase)
    if z.real >= _STIRLING_MIN or (z.real >= 0 and abs(z.imag) >= _STIRLING_MIN):
        return _stirling(z)
    m = math.ceil(_STIRLING_MIN - z.real)
    # real part from log|prod(z+k)|, imaginary part from the sum of principal phases
    log_abs = 0.0
    phase = 0.0
    prod = 1.0
    for k in range(m):
        w = z + k
        prod *= abs(w)
        if prod > 1e250 or prod < 1e-250:
            log_abs += math.log(prod)
            prod = 1.0
        phase += math.atan2(w.imag, w.real)
    log_abs += math.log(prod)
    return _stirling(z + m) - complex(log_abs, phase)


def _sinpi_real(x: float) -> float:
    r = math.fmod(x, 2.0)
    if r < -1.0:
        r += 2.0
    elif r > 1.0:
        r -= 2.0
    if r > 0.5:
        r = 1.0 - r
    elif r < -0.5:
        r = -1.0 - r
    return math.sin(math.pi * r)


def _cospi_real(x: float) -> float:
    r = abs(math.fmod(x, 2.0))
    if r > 1.0:
        r = 2.0 - r
    return math.sin(math.pi * (0.5 - r))


def sinpi(z) -> complex:
    """``sin(pi z)`` with exact zeros at the integers."""
    z = complex(z)
    x, y = z.real, z.imag
    if y == 0:
        return complex(_sinpi_real(x), 0.0)
    return complex(
        _sinpi_real(x) * math.cosh(math.pi * y),
        _cospi_real(x) * math.sinh(math.pi * y),
    )


def recip_gamma(z) -> complex:
    """Entire function ``1/Gamma(z)``; exactly zero at 0, -1, -2, ..."""
    z = complex(z)
    if is_nonpositive_integer(z):
        return 0j
    if z.imag == 0 and -170.0 < z.real < 170.0:
        return complex(1.0 / math.gamma(z.real), 0.0)
    if z.real >= 0.5:
        return cmath.exp(-log_gamma(z))
    # reflection: 1/G(z) = sin(pi z) G(1-z) / pi
    s = sinpi(z)
    lg = log_gamma(1.0 - z)
    if lg.real < 700.0:
        return s * cmath.exp(lg) / math.pi
    return cmath.exp(cmath.log(s) + lg) / math.pi


def _terminating_index(upper: Sequence[complex]) -> int | None:
    idx = [int(-u.real) for u in upper if is_nonpositive_integer(u)]
    return min(idx) if idx else None


def pfq(upper: Sequence, lower: Sequence, z, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Generalized hypergeometric series pFq(upper; lower; z).

    A nonpositive-integer upper parameter ``-m`` makes the series a
    polynomial, which is summed over exactly ``m + 1`` terms.
    """
    upper = [complex(u) for u in upper]
    lower = [complex(b) for b in lower]
    z = complex(z)
    stop = _terminating_index(upper)
    for b in lower:
        if is_nonpositive_integer(b) and (stop is None or stop > -b.real):
            raise ParameterError(f"lower parameter {b.real:g} hits a zero denominator")
    if z == 0 or stop == 0:
        return 1 + 0j

    p, q = len(upper), len(lower)
    if stop is None:
        if p > q + 1 or (p == q + 1 and abs(z) >= 1):
            raise ParameterError(f"{p}F{q} series diverges at |z| = {abs(z):g}")

    term = 1 + 0j
    total = 1 + 0j
    if stop is not None:
        for k in range(stop):
            num = math.prod((u + k for u in upper), start=1 + 0j)
            den = math.prod((b + k for b in lower), start=1 + 0j)
            term *= num / den * z / (k + 1)
            total += term
        return total

    small = 0
    prev = math.inf
    for k in range(ctrl.max_terms):
        num = math.prod((u + k for u in upper), start=1 + 0j)
        den = math.prod((b + k for b in lower), start=1 + 0j)
        term *= num / den * z / (k + 1)
        total += term
        mag = abs(term)
        if mag <= ctrl.rel_tol * abs(total) and mag <= prev:
            small += 1
            if small >= ctrl.consecutive_small:
                return total
        else:
            small = 0
        prev = mag
    raise ConvergenceError(f"{p}F{q} did not converge in {ctrl.max_terms} terms")


def gamma_star(b, z, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Entire incomplete gamma ``exp(-z) * sum_j z**j / Gamma(b+1+j)``.

    The reciprocal gammas are generated by the recursion
    ``1/G(s+1) = (1/G(s)) / s``; when ``b`` is a nonpositive integer the
    leading terms sit on poles of Gamma and are exact zeros.
    """
    b = complex(b)
    z = complex(z)
    if is_nonpositive_integer(b):
        j0 = int(-b.real)
        r = 1 + 0j
    else:
        j0 = 0
        r = recip_gamma(b + 1)
    if z == 0:
        return r if j0 == 0 else 0j

    # stopping is only trusted once the term ratio z/(b+1+j) is below 1
    j_safe = max(0.0, -b.real) + abs(z) + 1
    term = r * z**j0
    total = term
    small = 0
    for j in range(j0, j0 + ctrl.max_terms):
        term = term * z / (b + 1 + j)
        total += term
        if j >= j_safe and abs(term) <= ctrl.rel_tol * abs(total):
            small += 1
            if small >= ctrl.consecutive_small:
                return cmath.exp(-z) * total
        else:
            small = 0
    raise ConvergenceError(f"gamma_star did not converge in {ctrl.max_terms} terms")


def inc_beta(z: float, a, b, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Incomplete beta ``B_z(a, b) = z**a / a * 2F1(a, 1-b; a+1; z)``.

    The hypergeometric form continues the defining integral to ``b <= 0``.
    """
    z = float(z)
    a = complex(a)
    b = complex(b)
    if not 0 < z < 1:
        raise ParameterError("inc_beta needs 0 < z < 1")
    if is_nonpositive_integer(a):
        raise ParameterError("inc_beta: a must not be a nonpositive integer")
    return cmath.exp(a * math.log(z)) / a * pfq([a, 1 - b], [a + 1], z, ctrl)
