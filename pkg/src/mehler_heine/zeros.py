"""Zeros of the polynomials and of their Mehler-Heine limits.

Polynomial zeros are eigenvalues of the symmetric tridiagonal Jacobi matrix,
found by Sturm-count bisection. Zeros of the entire limit functions are found
by a sign-change scan followed by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from .asymptotics import ConvergenceReport, convergence_report, mh_limit, stieltjes_entire
from .errors import ConvergenceError, ParameterError, WindowError
from .families import Family, PolyKind, eval_hypergeom, recurrence_coeffs

__all__ = [
    "JacobiMatrix",
    "ZeroSet",
    "BracketConfig",
    "MHTarget",
    "StieltjesTarget",
    "jacobi_matrix",
    "tridiagonal_eigenvalues",
    "poly_zeros",
    "limit_zeros",
    "zero_convergence",
    "interval_counts",
]


@dataclass(frozen=True)
class JacobiMatrix:
    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        if len(self.offdiag) != max(len(self.diag) - 1, 0):
            raise ParameterError("offdiag must be one shorter than diag")
        if np.any(self.offdiag <= 0):
            raise ParameterError("offdiag entries must be positive")

    @property
    def size(self) -> int:
        return len(self.diag)

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


@dataclass(frozen=True)
class ZeroSet:
    zeros: np.ndarray
    n: Optional[int]
    method: str
    residuals: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __len__(self) -> int:
        return len(self.zeros)

    def __getitem__(self, i):
        return self.zeros[i]


@dataclass(frozen=True)
class BracketConfig:
    """Scan window and tolerances.

    The default step of 0.05 can step over a pair of nearby zeros (no sign
    change in between); shrink it when pairs are close.
    """

    x_lo: float
    x_hi: float
    scan_step: float = 0.05
    refine_tol: float = 4e-16

    def __post_init__(self):
        if not self.x_lo < self.x_hi:
            raise ParameterError("need x_lo < x_hi")
        if not 0 < self.scan_step < self.x_hi - self.x_lo:
            raise ParameterError("scan_step must be positive and smaller than the window")
        if not self.refine_tol > 0:
            raise ParameterError("refine_tol must be positive")


@dataclass(frozen=True)
class MHTarget:
    """Mehler-Heine limit of the given family and kind, on the real axis."""

    family: Family
    kind: PolyKind

    def __call__(self, x: float) -> float:
        return mh_limit(self.family, self.kind, x).real


@dataclass(frozen=True)
class StieltjesTarget:
    """Entire function ``S(x)/Gamma(-x)``."""

    family: Family

    def __call__(self, x: float) -> float:
        return stieltjes_entire(self.family, x).real


def jacobi_matrix(family: Family, kind: PolyKind, N: int) -> JacobiMatrix:
    """Jacobi matrix whose eigenvalues are the zeros of the degree-``N`` (or,
    for the associated kind, index-``N``) polynomial.

    The associated polynomials satisfy the recurrence shifted by one index,
    so their matrix uses ``b_1..b_{N-1}`` and ``sqrt(c_2)..sqrt(c_{N-1})``.
    """
    if kind is PolyKind.ASSOCIATED:
        if N < 2:
            raise ParameterError("associated polynomials need N >= 2 to have zeros")
        ks = range(1, N)
    else:
        if N < 1:
            raise ParameterError("N must be positive")
        ks = range(N)
    coeffs = [recurrence_coeffs(family, k) for k in ks]
    diag = np.array([b for b, _ in coeffs])
    offdiag = np.sqrt(np.array([c for _, c in coeffs[1:]]))
    return JacobiMatrix(diag, offdiag)


def _sturm_count(diag: np.ndarray, off2: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """Number of eigenvalues strictly below each entry of ``lam``."""
    tiny = np.finfo(float).tiny
    q = diag[0] - lam
    count = (q < 0).astype(int)
    for i in range(1, len(diag)):
        q = np.where(q == 0, -tiny, q)
        q = diag[i] - lam - off2[i - 1] / q
        count += q < 0
    return count


def tridiagonal_eigenvalues(
    jm: JacobiMatrix, indices: Optional[Iterable[int]] = None, max_iter: int = 200
) -> tuple[np.ndarray, np.ndarray]:
    """Selected eigenvalues (ascending, 0-based ``indices``) by bisection.

    Returns the midpoints and the final bracket widths. All brackets are
    bisected together, one Sturm sweep per step. A bracket stops at a
    relative width of ``2 eps`` (or when its midpoint no longer moves), with
    an absolute floor of ``eps**2`` times the spectral radius; an absolute
    ``eps * |T|`` tolerance would leave the small eigenvalues needlessly
    noisy for large matrices.
    """
    d = np.asarray(jm.diag, dtype=float)
    e = np.asarray(jm.offdiag, dtype=float)
    n = len(d)
    idx = np.arange(n) if indices is None else np.asarray(sorted(indices), dtype=int)
    if idx.size and (idx.min() < 0 or idx.max() >= n):
        raise ParameterError("eigenvalue index out of range")
    radius = np.zeros(n)
    radius[:-1] += e
    radius[1:] += e
    lo = np.full(idx.size, (d - radius).min())
    hi = np.full(idx.size, (d + radius).max())
    eps = np.finfo(float).eps
    scale = max(abs(lo[0]), abs(hi[0]), 1.0) if idx.size else 1.0
    floor = eps * eps * scale
    off2 = e * e
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        width = hi - lo
        active = (width > np.maximum(2 * eps * np.maximum(abs(lo), abs(hi)), floor)) & (mid > lo) & (mid < hi)
        if not active.any():
            break
        below = _sturm_count(d, off2, mid) <= idx
        lo = np.where(active & below, mid, lo)
        hi = np.where(active & ~below, mid, hi)
    else:
        raise ConvergenceError("Sturm bisection did not converge")
    return 0.5 * (lo + hi), hi - lo


def poly_zeros(
    family: Family, kind: PolyKind, N: int, indices: Optional[Iterable[int]] = None
) -> ZeroSet:
    """Real zeros of the polynomial as Jacobi-matrix eigenvalues.

    Residuals are the widths of the final bisection brackets, i.e. bounds on
    the distance to the true eigenvalue.
    """
    jm = jacobi_matrix(family, kind, N)
    vals, widths = tridiagonal_eigenvalues(jm, indices)
    if kind is not PolyKind.ASSOCIATED:
        # Sturm counts resolve eigenvalues only to about eps * ||J|| in
        # absolute terms, which can even put a tiny positive zero below 0
        slack = 64 * np.finfo(float).eps * (np.max(np.abs(jm.diag)) + 2 * np.max(jm.offdiag, initial=0.0))
        for i in np.flatnonzero(vals < 1e-3):
            polished = _polish_small(family, N, max(float(vals[i] + widths[i]), 0.0) + slack)
            if polished is not None:
                vals[i], widths[i] = polished
    return ZeroSet(vals, N, "eigen", widths)


def _polish_small(family: Family, N: int, hi: float) -> Optional[tuple[float, float]]:
    """Bisect the hypergeometric form on ``[0, hi]``.

    The smallest zeros tend to 0 very fast (about 1e-16 at N = 20 for
    a = 1.23), below the absolute resolution of the Sturm counts. The
    terminating series carries ``x`` exactly in every term, so it keeps
    full relative accuracy there. The value at 0 is exactly 1; returns
    None when ``hi`` does not bracket a sign change.
    """
    lo = 0.0
    if hi <= 0 or eval_hypergeom(family, N, hi).real > 0:
        return None
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if eval_hypergeom(family, N, mid).real > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), hi - lo


def _scan_grid(config: BracketConfig) -> np.ndarray:
    steps = math.ceil((config.x_hi - config.x_lo) / config.scan_step - 1e-9)
    grid = config.x_lo + config.scan_step * np.arange(steps + 1)
    grid[-1] = config.x_hi
    return grid


def _bisect(f: Callable[[float], float], a: float, b: float, fa: float, tol: float) -> float:
    while b - a > tol * max(1.0, abs(a), abs(b)):
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = f(m)
        if fm == 0:
            return m
        if (fm < 0) == (fa < 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


Target = Union[MHTarget, StieltjesTarget, Callable[[float], float]]


def limit_zeros(target: Target, config: BracketConfig) -> ZeroSet:
    """All sign-change zeros of a real function in ``[x_lo, x_hi]``.

    Zeros of even multiplicity (touch points) are not detected.
    """
    f = target
    grid = _scan_grid(config)
    vals = [float(f(x)) for x in grid]
    roots = []
    for i, x in enumerate(grid):
        if vals[i] == 0:
            roots.append(float(x))
            continue
        if i + 1 < len(grid) and vals[i + 1] != 0 and (vals[i] < 0) != (vals[i + 1] < 0):
            roots.append(_bisect(f, float(x), float(grid[i + 1]), vals[i], config.refine_tol))
    roots = np.array(roots)
    residuals = np.array([abs(float(f(r))) for r in roots])
    return ZeroSet(roots, None, "bracket", residuals)


def interval_counts(zs: ZeroSet, edges: Sequence[float]) -> list:
    """``[(lo, hi, count)]`` of zeros in each half-open interval ``[lo, hi)``."""
    z = np.asarray(zs.zeros)
    return [
        (lo, hi, int(np.count_nonzero((z >= lo) & (z < hi))))
        for lo, hi in zip(edges[:-1], edges[1:])
    ]


def _limit_zeros_upto(target: Target, k: int, config: Optional[BracketConfig]) -> ZeroSet:
    if config is not None:
        zs = limit_zeros(target, config)
        if len(zs) < k:
            raise WindowError(f"only {len(zs)} limit zeros in [{config.x_lo}, {config.x_hi}]")
        return zs
    hi = 10.0
    while hi <= 320.0:
        zs = limit_zeros(target, BracketConfig(-0.5, hi))
        if len(zs) >= k:
            return zs
        hi *= 2
    raise WindowError(f"fewer than {k} limit zeros below x = 320")


def zero_convergence(
    family: Family,
    kind: PolyKind,
    k: int,
    n_list: Sequence[int],
    config: Optional[BracketConfig] = None,
) -> ConvergenceReport:
    """Distance of the ``k``-th smallest polynomial zero from the ``k``-th
    zero of the Mehler-Heine limit, for each ``n`` in ``n_list``."""
    if k < 1:
        raise ParameterError("k must be positive")
    zeta = _limit_zeros_upto(MHTarget(family, kind), k, config).zeros[k - 1]
    seq = []
    for n in n_list:
        degree = n - 1 if kind is PolyKind.ASSOCIATED else n
        if degree < k:
            raise ParameterError(f"polynomial of index {n} has fewer than {k} zeros")
        x_nk = poly_zeros(family, kind, n, indices=[k - 1]).zeros[0]
        seq.append((n, x_nk))
    return convergence_report(seq, zeta)

