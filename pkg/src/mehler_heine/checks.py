"""Invariant checks run by ``mehler-heine check``.

Each check returns a :class:`CheckResult` with the measured worst-case
quantity and the tolerance it is compared against.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import asymptotics as asy
from . import families as fam
from . import specfun as sf
from . import zeros as zr
from .families import Charlier, Meixner, PolyKind

CHARLIER = Charlier(1.23)
MEIXNER = Meixner(1.23, 0.36)
DESK_FAMILIES = (CHARLIER, MEIXNER)

# max |t_n - limit| over the fig presets, from a 60-digit oracle run
FIG1_ORACLE_MAX_ERR = 240276.41190018869
FIG2_ORACLE_MAX_ERR = 1611053626.0280478


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class CheckReport:
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {
            "status": "pass" if self.passed else "fail",
            "count": len(self.results),
            "checks": {r.name: {k: v for k, v in r.to_dict().items() if k != "name"} for r in self.results},
        }


def _grid_real(rng: random.Random, lo: float, hi: float) -> float:
    # on a 2**-30 grid, so integer shifts of the value are exact
    return round(rng.uniform(lo, hi) * 2**30) / 2**30


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(b), 1.0)


def _le(name: str, measured: float, tol: float) -> CheckResult:
    return CheckResult(name, bool(measured <= tol), float(measured), tol)


def check_pochhammer_split(rng: random.Random) -> CheckResult:
    worst = 0.0
    for _ in range(200):
        s = _grid_real(rng, -20, 20)
        l = rng.randint(0, 30)
        m = rng.randint(0, l)
        lhs = sf.pochhammer(s, l)
        rhs = sf.pochhammer(s, m) * sf.pochhammer(s + m, l - m)
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), 1e-300))
    return _le("pochhammer_split", worst, 1e-12)


def check_pochhammer_reflection(rng: random.Random) -> CheckResult:
    worst = 0.0
    for _ in range(200):
        s = _grid_real(rng, -20, 20)
        l = rng.randint(0, 30)
        lhs = sf.pochhammer(-s, l)
        rhs = (-1) ** l * sf.pochhammer(s - l + 1, l)
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), 1e-300))
    return _le("pochhammer_reflection", worst, 1e-12)


def check_pochhammer_ratio(rng: random.Random) -> CheckResult:
    worst = 0.0
    for _ in range(200):
        s = _grid_real(rng, 0.1, 20)
        l, m = rng.randint(0, 30), rng.randint(0, 30)
        lhs = sf.pochhammer(s + m, l) / sf.pochhammer(s, l)
        rhs = sf.pochhammer(s + l, m) / sf.pochhammer(s, m)
        worst = max(worst, abs(lhs - rhs) / abs(lhs))
    return _le("pochhammer_ratio", worst, 1e-12)


def check_recip_gamma(rng: random.Random) -> CheckResult:
    worst = 0.0
    for _ in range(200):
        z = complex(rng.uniform(-30, 30), rng.uniform(-10, 10))
        worst = max(worst, abs(sf.recip_gamma(z) * cmath.exp(sf.log_gamma(z)) - 1))
    return _le("recip_gamma_log_gamma", worst, 1e-12)


def check_pfq_termination() -> CheckResult:
    worst = 0.0
    ctrl = sf.SeriesControl()
    for n in range(0, 25):
        for z in (-3.0, -0.5, 0.7, 2.5):
            exact = sf.pfq([-n], [1.5], z)
            # same series through the generic stopping rule
            generic = _generic_1f1(-n, 1.5, z, ctrl)
            worst = max(worst, _rel(generic, exact))
    return _le("pfq_terminating_vs_generic", worst, 1e-13)


def _generic_1f1(a: float, b: float, z: float, ctrl: sf.SeriesControl) -> complex:
    term, total, small = 1.0, 1.0, 0
    for k in range(ctrl.max_terms):
        term *= (a + k) / (b + k) * z / (k + 1)
        total += term
        if abs(term) <= ctrl.rel_tol * abs(total):
            small += 1
            if small >= ctrl.consecutive_small:
                break
        else:
            small = 0
    return complex(total)


def check_gamma_star_entire() -> CheckResult:
    bad = 0
    for i in range(0, 401):
        b = -8.0 + 0.025 * i
        for z in (-1.23, 0.5, 2.0):
            v = sf.gamma_star(b, z)
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                bad += 1
    return _le("gamma_star_entire", bad, 0)


def check_cross_representation(coeffs: Callable = fam.recurrence_coeffs) -> CheckResult:
    rng = random.Random(20240601)
    worst = 0.0
    for family in DESK_FAMILIES:
        for _ in range(100):
            x = complex(rng.uniform(-10, 10), rng.uniform(-10, 10))
            for n in range(21):
                h = fam.eval_hypergeom(family, n, x)
                r = fam.eval_poly(family, PolyKind.STANDARD, n, x, coeffs=coeffs)
                worst = max(worst, _rel(r, h))
    return _le("cross_representation", worst, 1e-9)


def check_monic_consistency() -> CheckResult:
    rng = random.Random(7)
    worst = 0.0
    for family in DESK_FAMILIES:
        for _ in range(20):
            x = complex(rng.uniform(-10, 10), rng.uniform(-10, 10))
            for n in range(31):
                monic = fam.eval_poly(family, PolyKind.MONIC, n, x)
                std = fam.eval_poly(family, PolyKind.STANDARD, n, x)
                worst = max(worst, _rel(fam.monic_factor(family, n).to_real() * std, monic))
    return _le("monic_consistency", worst, 1e-10)


def check_moments() -> CheckResult:
    worst = max(abs(fam.moment(f, 0) / fam.moment0(f) - 1) for f in DESK_FAMILIES)
    return _le("moments", worst, 1e-12)


def check_orthogonality() -> CheckResult:
    worst = 0.0
    for family in DESK_FAMILIES:
        for n in range(9):
            k_n = fam.squared_norm(family, n)
            for m in range(9):
                value, _ = fam.orthogonality_sum(family, n, m)
                worst = max(worst, abs(value - (k_n if n == m else 0.0)) / k_n)
    return _le("orthogonality", worst, 1e-8)


def check_tannery() -> CheckResult:
    bad = 0
    for family in DESK_FAMILIES:
        for x in (-1.0, -1.5, -4.0):
            for n in (5, 20, 100):
                bad += sum(1 for _, r in asy.tannery_bounds(family, x, n) if not 0 < r <= 1)
    return _le("tannery_bounds", bad, 0)


def check_carleman() -> CheckResult:
    worst = 0.0
    for N in (100, 10_000):
        ratio = asy.carleman_diag(CHARLIER, N) / (2 * math.sqrt(N / CHARLIER.a))
        worst = max(worst, abs(ratio - 1) * math.sqrt(N))
    return _le("carleman_growth", worst, 1.0)


def check_mh_markov() -> CheckResult:
    worst = 0.0
    for family in DESK_FAMILIES:
        for x in (-0.5, -1.5, -3.7):
            lhs = (
                fam.moment0(family)
                * asy.mh_limit(family, PolyKind.ASSOCIATED, x)
                / asy.mh_limit(family, PolyKind.MONIC, x)
            )
            worst = max(worst, abs(lhs / asy.stieltjes(family, x) - 1))
    return _le("mh_markov_consistency", worst, 1e-10)


def check_stieltjes_oracle() -> CheckResult:
    rng = random.Random(11)
    worst = 0.0
    for family in DESK_FAMILIES:
        for _ in range(10):
            z = complex(rng.uniform(-20, -0.05), rng.uniform(-5, 5))
            worst = max(worst, abs(asy.stieltjes(family, z) / asy.stieltjes_direct(family, z) - 1))
    return _le("stieltjes_vs_direct_sum", worst, 1e-10)


def check_two_form() -> CheckResult:
    worst = 0.0
    for i in range(50):
        x = -5.0 + i * 0.1
        a = asy.mh_limit(MEIXNER, PolyKind.ASSOCIATED, x)
        b = asy.mh_limit_beta_form(MEIXNER, x)
        worst = max(worst, abs(a / b - 1))
    return _le("meixner_two_form_agreement", worst, 1e-10)


def check_scaled_recurrence() -> CheckResult:
    worst = 0.0
    for family in DESK_FAMILIES:
        for kind in PolyKind:
            for x in (-2.7, -0.5, 0.5, 3.3, 1.5 + 0.5j):
                for n in (1, 5, 30, 100, 150):
                    t = asy.scaled_poly(family, kind, n, x).value
                    ref = asy._scaled_fallback(family, kind, n, complex(x))
                    worst = max(worst, _rel(t, ref))
    return _le("scaled_recurrence", worst, 1e-9)


def check_zero_methods() -> CheckResult:
    worst = 0.0
    for family in DESK_FAMILIES:
        for kind in PolyKind:
            for N in range(2, 13):
                eig = zr.poly_zeros(family, kind, N).zeros
                hi = float(eig[-1]) + 1.0

                def f(x, family=family, kind=kind, N=N):
                    m, s = fam.eval_poly_scaled(family, kind, N, x)
                    return m.real

                br = zr.limit_zeros(f, zr.BracketConfig(-1.0, hi, scan_step=0.01)).zeros
                if len(br) != len(eig):
                    return CheckResult("zeros_eigen_vs_bracket", False, math.inf, 1e-8)
                worst = max(worst, float(abs(br - eig).max()))
    return _le("zeros_eigen_vs_bracket", worst, 1e-8)


def check_interlacing() -> CheckResult:
    bad = 0
    for family in DESK_FAMILIES:
        prev = zr.poly_zeros(family, PolyKind.MONIC, 1).zeros
        for N in range(2, 22):
            cur = zr.poly_zeros(family, PolyKind.MONIC, N).zeros
            ok = all(cur[i] < prev[i] < cur[i + 1] for i in range(N - 1))
            bad += not ok or cur[0] <= 0
            prev = cur
    return _le("zeros_interlacing_positive", bad, 0)


def check_markov_convergence() -> CheckResult:
    s = asy.stieltjes(CHARLIER, -1.0)
    errs = [abs(asy.markov_ratio(CHARLIER, -1.0, n) - s) for n in range(50, 501, 50)]
    monotone = all(b <= a for a, b in zip(errs, errs[1:]))
    return CheckResult("markov_convergence", monotone and errs[-1] <= 1e-14, errs[-1], 1e-14)


def check_figures() -> CheckResult:
    worst = 0.0
    for family, ref in ((CHARLIER, FIG1_ORACLE_MAX_ERR), (MEIXNER, FIG2_ORACLE_MAX_ERR)):
        err = max(
            abs(
                asy.scaled_poly(family, PolyKind.ASSOCIATED, 28, x).value
                - asy.mh_limit(family, PolyKind.ASSOCIATED, x)
            )
            for x in np.linspace(-1.0, 10.0, 551)
        )
        worst = max(worst, abs(err / ref - 1))
    return _le("figure_reproduction", worst, 1e-9)


def _perturbed_coeffs(family, n):
    b, c = fam.recurrence_coeffs(family, n)
    return b * (1 + 1e-6), c


def run_checks(inject_fault: bool = False) -> CheckReport:
    """Run every check. ``inject_fault`` perturbs ``b_n`` by a relative 1e-6
    in the cross-representation check, which must then fail."""
    rng = random.Random(12345)
    coeffs = _perturbed_coeffs if inject_fault else fam.recurrence_coeffs
    report = CheckReport()
    report.results += [
        check_pochhammer_split(rng),
        check_pochhammer_reflection(rng),
        check_pochhammer_ratio(rng),
        check_recip_gamma(rng),
        check_pfq_termination(),
        check_gamma_star_entire(),
        check_cross_representation(coeffs),
        check_monic_consistency(),
        check_moments(),
        check_orthogonality(),
        check_tannery(),
        check_carleman(),
        check_mh_markov(),
        check_stieltjes_oracle(),
        check_two_form(),
        check_scaled_recurrence(),
        check_zero_methods(),
        check_interlacing(),
        check_markov_convergence(),
        check_figures(),
    ]
    return report
