"""Mehler-Heine limits, scaled evaluation and Stieltjes transforms.

With ``rho = 1`` (Charlier) or ``rho = 1 - c`` (Meixner), the quantity

    t_n(x) = (-rho)**n * P_n(x) / Gamma(n - x),

where ``P_n`` is the monic or associated polynomial, converges to an entire
function of ``x``. The standard polynomials scaled by ``a**n`` or
``c**n (beta)_n`` give exactly the same ``t_n`` as the monic ones.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError, ParameterError
from .families import (
    Charlier,
    Family,
    Meixner,
    PolyKind,
    eval_poly_scaled,
    moment0,
    near_lattice,
    recurrence_coeffs,
    weights,
)
from .specfun import (
    DEFAULT_CONTROL,
    SeriesControl,
    gamma_star,
    inc_beta,
    is_nonpositive_integer,
    log_gamma,
    pfq,
    pochhammer,
    recip_gamma,
)

__all__ = [
    "ScaledPolyValue",
    "ConvergenceReport",
    "mh_limit",
    "mh_limit_beta_form",
    "scaled_poly",
    "stieltjes",
    "stieltjes_direct",
    "stieltjes_entire",
    "markov_ratio",
    "convergence_report",
    "tannery_bounds",
    "carleman_diag",
]


def _rho(family: Family) -> float:
    return 1.0 if isinstance(family, Charlier) else 1.0 - family.c


def _real_power(base: float, w: complex) -> complex:
    # positive real base, principal log: entire in w
    return cmath.exp(w * math.log(base))


@dataclass(frozen=True)
class ScaledPolyValue:
    value: complex
    family: Family
    kind: PolyKind
    n: int
    method: str = "recurrence"

    @property
    def normalizer(self) -> str:
        if isinstance(self.family, Charlier):
            prefix = "a^n" if self.kind is PolyKind.STANDARD else "(-1)^n"
        else:
            prefix = "c^n (beta)_n" if self.kind is PolyKind.STANDARD else "(c-1)^n"
        return f"{prefix} / Gamma(n - x)"


@dataclass(frozen=True)
class ConvergenceReport:
    samples: list
    fitted_order: Optional[float]

    @property
    def errors(self) -> list:
        return [e for _, e in self.samples]

    def strictly_decreasing(self) -> bool:
        errs = self.errors
        return all(b < a for a, b in zip(errs, errs[1:]))


def _associated_removable(family: Family, m: int) -> complex:
    """``S(x)/Gamma(-x)`` times the Meixner prefactor at ``x = m >= 0``: the
    residue ``w_m`` of ``S`` meets ``1/Gamma(-x) ~ (-1)**(m+1) m! (x - m)``."""
    sign = -1.0 if m % 2 == 0 else 1.0
    if isinstance(family, Charlier):
        return complex(sign * family.a**m)
    beta, c = family.beta, family.c
    return complex(sign * (1 - c) ** (-m) * pochhammer(beta, m) * c**m)


def mh_limit(
    family: Family, kind: PolyKind, x, ctrl: SeriesControl = DEFAULT_CONTROL
) -> complex:
    """Limit of the scaled polynomial as ``n -> infinity``.

    Charlier: ``e**a / Gamma(-x)`` and ``-gamma*(-x, -a)``.
    Meixner: ``(1-c)**(-beta-x) / Gamma(-x)`` and
    ``(1-c)**(-x) / (x Gamma(-x)) * 2F1(-x, beta; 1-x; c)``.
    """
    x = complex(x)
    if isinstance(family, Charlier):
        if kind is PolyKind.ASSOCIATED:
            return -gamma_star(-x, -family.a, ctrl)
        return math.exp(family.a) * recip_gamma(-x)
    beta, c = family.beta, family.c
    if kind is not PolyKind.ASSOCIATED:
        return _real_power(1 - c, -beta - x) * recip_gamma(-x)
    if is_nonpositive_integer(-x):
        # 1/Gamma(-x) has a simple zero where the 2F1 term k = x has a pole
        return _associated_removable(family, int(x.real))
    hyp = pfq([-x, beta], [1 - x], c, ctrl)
    return _real_power(1 - c, -x) * recip_gamma(-x) / x * hyp


def mh_limit_beta_form(family: Meixner, x, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Associated Meixner limit as ``-(c/(1-c))**x / Gamma(-x) * B_c(-x, 1-beta)``.

    Undefined at nonnegative integers, where ``B_c`` has poles.
    """
    if not isinstance(family, Meixner):
        raise ParameterError("the incomplete-beta form exists for Meixner only")
    x = complex(x)
    c = family.c
    return -_real_power(c / (1 - c), x) * recip_gamma(-x) * inc_beta(c, -x, 1 - family.beta, ctrl)


def scaled_poly(family: Family, kind: PolyKind, n: int, x) -> ScaledPolyValue:
    """``t_n(x)`` by the renormalized recurrence

        t_{k+1} = rho (b_k - x)/(k - x) t_k - rho**2 c_k / ((k-x)(k-1-x)) t_{k-1},

    which never overflows. Near an integer in ``[0, n]`` the divisors vanish
    and the recurrence is unstable, so there the value is the exact
    log-scaled polynomial divided by ``Gamma(n - x)`` in log space.
    """
    if n < 0:
        raise ParameterError("n must be nonnegative")
    x = complex(x)
    rho = _rho(family)
    associated = kind is PolyKind.ASSOCIATED

    if near_lattice(x) and round(x.real) <= n:
        return ScaledPolyValue(_scaled_fallback(family, kind, n, x), family, kind, n, "logscaled")

    if associated:
        if n == 0:
            return ScaledPolyValue(0j, family, kind, n)
        prev, cur, start = 0j, -rho * recip_gamma(1 - x), 1
    else:
        prev, cur, start = 0j, recip_gamma(-x), 0
    for k in range(start, n):
        b, c = recurrence_coeffs(family, k)
        nxt = rho * (b - x) / (k - x) * cur
        if c != 0 and prev != 0:
            nxt -= rho * rho * c / ((k - x) * (k - 1 - x)) * prev
        prev, cur = cur, nxt
    return ScaledPolyValue(cur, family, kind, n)


def _scaled_fallback(family: Family, kind: PolyKind, n: int, x: complex) -> complex:
    poly_kind = PolyKind.ASSOCIATED if kind is PolyKind.ASSOCIATED else PolyKind.MONIC
    m, s = eval_poly_scaled(family, poly_kind, n, x)
    if m == 0 or is_nonpositive_integer(n - x):
        return 0j
    sign = -1.0 if n % 2 else 1.0
    log_mag = s + n * math.log(_rho(family)) - log_gamma(n - x)
    return sign * m * cmath.exp(log_mag)


def _check_cut(z: complex) -> None:
    if z.imag == 0 and z.real >= 0:
        raise DomainError(f"z = {z.real:g} lies on the support cut [0, inf)")


def stieltjes(family: Family, z, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Stieltjes transform ``S(z) = (1/z) p+1Fq+1(-z, ...; 1-z, ...; .)``."""
    z = complex(z)
    _check_cut(z)
    if isinstance(family, Charlier):
        return pfq([-z], [1 - z], family.a, ctrl) / z
    return pfq([-z, family.beta], [1 - z], family.c, ctrl) / z


def _lattice_sum(family: Family, x: complex, term, rel_tol: float = 1e-17, max_terms: int = 100000):
    total = 0j
    small = 0
    k_min = max(20, int(2 * abs(x)) + 1)
    for k, w in enumerate(weights(family)):
        if k >= max_terms:
            break
        t = w * term(k)
        total += t
        if k >= k_min and abs(t) <= rel_tol * abs(total):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
    raise ConvergenceError("lattice sum did not settle")


def stieltjes_direct(family: Family, z) -> complex:
    """``S(z) = sum_k w_k / (z - k)``, valid off the lattice points."""
    z = complex(z)
    if is_nonpositive_integer(-z):
        raise DomainError(f"z = {z.real:g} is a pole of the Stieltjes transform")
    return _lattice_sum(family, z, lambda k: 1.0 / (z - k))


def stieltjes_entire(family: Family, x) -> complex:
    """Entire function ``S(x) / Gamma(-x)``; its zeros interlace the lattice."""
    x = complex(x)
    rg = recip_gamma(-x)
    if rg == 0:
        m = int(x.real)
        w_m = next(w for k, w in enumerate(weights(family)) if k == m)
        return complex((-1.0) ** (m + 1) * math.factorial(m) * w_m)
    return rg * _lattice_sum(family, x, lambda k: 1.0 / (x - k))


def markov_ratio(family: Family, z, n: int) -> complex:
    """``mu0 * P*_n(z) / P^_n(z)``, the ``n``-th Markov approximant of ``S(z)``.

    The ratio equals the ``n``-th convergent of the Jacobi continued fraction

        mu0 / (z - b_0 - c_1 / (z - b_1 - ... - c_{n-1} / (z - b_{n-1}))),

    which is evaluated from the bottom up. Unlike the ratio of two forward
    recurrences this does not accumulate rounding error with ``n``.
    """
    if n < 1:
        raise ParameterError("n must be positive")
    z = complex(z)
    _check_cut(z)
    tail = 0j
    for k in range(n - 1, -1, -1):
        b, _ = recurrence_coeffs(family, k)
        den = z - b - tail
        if den == 0:
            raise ZeroDivisionError(f"continued fraction breaks down at z = {z}")
        tail = recurrence_coeffs(family, k)[1] / den if k > 0 else 1.0 / den
    return moment0(family) * tail


def convergence_report(sequence: Sequence, reference) -> ConvergenceReport:
    """Errors of ``(n, value)`` samples against ``reference`` and the fitted order.

    The order is minus the least-squares slope of ``log error`` against
    ``log n``; it is ``None`` with fewer than three samples or when any
    error is below ``1e-15``.
    """
    if len(sequence) < 2:
        raise ParameterError("need at least two samples")
    ns = [int(n) for n, _ in sequence]
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ParameterError("sample indices must be strictly increasing")
    samples = [(n, float(abs(complex(v) - complex(reference)))) for n, v in sequence]
    errs = [e for _, e in samples]
    order = None
    if len(samples) >= 3 and min(errs) >= 1e-15:
        slope = np.polyfit(np.log(ns), np.log(errs), 1)[0]
        order = float(-slope)
    return ConvergenceReport(samples, order)


def tannery_bounds(family: Family, x: float, n: int) -> list:
    """Dominating ratios from the Tannery argument, ``[(k, ratio), k = 0..n]``.

    Charlier: ``(n-k+1)_k / (n-k-x)_k``. Meixner:
    ``(-x)_{n-k} / (-x)_n * n!/(n-k)! = prod_j (n-j)/(n-j-(x+1))``.
    All lie in ``(0, 1]`` for ``x <= -1``.
    """
    x = float(x)
    if x > -1:
        raise DomainError("the dominating bounds need x <= -1")
    if n < 1:
        raise ParameterError("n must be positive")
    out = []
    for k in range(n + 1):
        ratio = 1.0
        for j in range(k):
            if isinstance(family, Charlier):
                ratio *= (n - k + 1 + j) / (n - k - x + j)
            else:
                ratio *= (n - j) / (n - j - (x + 1))
        out.append((k, ratio))
    return out


def carleman_diag(family: Family, N: int) -> float:
    """Partial Carleman sum ``sum_{n=1}^N c_n**(-1/2)``."""
    if N < 1:
        raise ParameterError("N must be positive")
    return math.fsum(recurrence_coeffs(family, n)[1] ** -0.5 for n in range(1, N + 1))
