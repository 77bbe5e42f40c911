import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mehler_heine import families as fam
from mehler_heine.errors import ParameterError, PolyOverflowError
from mehler_heine.families import Charlier, Meixner, PolyKind

finite = dict(allow_nan=False, allow_infinity=False)
KINDS = list(PolyKind)


def test_parameter_validation():
    for bad in (0.0, -1.0, math.inf, math.nan):
        with pytest.raises(ParameterError):
            Charlier(bad)
    with pytest.raises(ParameterError):
        Meixner(0.0, 0.5)
    for c in (0.0, 1.0, 1.5):
        with pytest.raises(ParameterError):
            Meixner(1.0, c)


def test_recurrence_coeffs(charlier, meixner):
    assert fam.recurrence_coeffs(charlier, 0) == (1.23, 0.0)
    assert fam.recurrence_coeffs(charlier, 3) == (3 + 1.23, 3 * 1.23)
    b, c = fam.recurrence_coeffs(meixner, 2)
    assert b == pytest.approx((2 + 3.23 * 0.36) / 0.64)
    assert c == pytest.approx(2 * 2.23 * 0.36 / 0.64**2)
    with pytest.raises(ParameterError):
        fam.recurrence_coeffs(charlier, -1)


def test_low_degree_values(charlier, meixner):
    assert fam.eval_poly(charlier, PolyKind.MONIC, 1, -1) == pytest.approx(-2.23)
    assert fam.eval_poly(charlier, PolyKind.ASSOCIATED, 2, 0.0) == pytest.approx(-2.23)  # x - b_1
    for family in (charlier, meixner):
        for x in (-3.0, 0.5, 2 + 1j):
            assert fam.eval_poly(family, PolyKind.STANDARD, 0, x) == 1
            assert fam.eval_poly(family, PolyKind.MONIC, 0, x) == 1
            assert fam.eval_poly(family, PolyKind.ASSOCIATED, 0, x) == 0
            assert fam.eval_poly(family, PolyKind.ASSOCIATED, 1, x) == 1


def test_charlier_standard_degree_one():
    # C_1(x; a) = 1 - x/a
    a = 1.23
    for x in (-2.0, 0.3, 5.0):
        assert fam.eval_poly(Charlier(a), PolyKind.STANDARD, 1, x) == pytest.approx(1 - x / a)


def test_meixner_standard_degree_one():
    # M_1(x; beta, c) = 1 + x (1 - 1/c) / beta
    beta, c = 1.23, 0.36
    for x in (-2.0, 0.3, 5.0):
        want = 1 + x * (1 - 1 / c) / beta
        assert fam.eval_poly(Meixner(beta, c), PolyKind.STANDARD, 1, x) == pytest.approx(want)


def test_standard_is_one_on_zero(family):
    # both standard families equal 1 at x = 0 for all n
    for n in range(0, 40):
        assert fam.eval_hypergeom(family, n, 0) == 1
        assert fam.eval_poly(family, PolyKind.STANDARD, n, 0.0) == pytest.approx(1, rel=1e-12)


@given(
    st.sampled_from([Charlier(1.23), Meixner(1.23, 0.36), Charlier(0.2), Meixner(3.5, 0.8)]),
    st.integers(0, 20),
    st.floats(-10, 10, **finite),
    st.floats(-10, 10, **finite),
)
@settings(max_examples=300)
def test_recurrence_equals_hypergeometric(family, n, re, im):
    x = complex(re, im)
    rec = fam.eval_poly(family, PolyKind.STANDARD, n, x)
    hyp = fam.eval_hypergeom(family, n, x)
    assert abs(rec - hyp) <= 1e-9 * max(1.0, abs(hyp))


def test_charlier_vs_mpmath_exact_recurrence():
    a = mp.mpf("1.23")
    x = mp.mpf("2.7")
    prev, cur = mp.mpf(0), mp.mpf(1)
    for k in range(25):
        prev, cur = cur, (x - (k + a)) * cur - a * k * prev
    got = fam.eval_poly(Charlier(1.23), PolyKind.MONIC, 25, 2.7)
    assert abs(got - float(cur)) <= 1e-12 * abs(float(cur))


@given(st.sampled_from(KINDS[:2]), st.integers(0, 40), st.floats(-20, 20, **finite))
def test_monic_standard_relation(kind, n, x):
    for family in (Charlier(1.23), Meixner(1.23, 0.36)):
        monic = fam.eval_poly(family, PolyKind.MONIC, n, x)
        std = fam.eval_poly(family, PolyKind.STANDARD, n, x)
        assert abs(fam.monic_factor(family, n).to_real() * std - monic) <= 1e-10 * max(1.0, abs(monic))


def test_monic_factor_values(charlier, meixner):
    assert fam.monic_factor(charlier, 3).to_real() == pytest.approx(-(1.23**3))
    want = 1.23 * 2.23 * (0.36 / (0.36 - 1)) ** 2
    assert fam.monic_factor(meixner, 2).to_real() == pytest.approx(want)


def test_overflow_is_flagged_but_scaled_survives(charlier):
    with pytest.raises(PolyOverflowError):
        fam.eval_poly(charlier, PolyKind.MONIC, 400, 0.5)
    m, s = fam.eval_poly_scaled(charlier, PolyKind.MONIC, 400, 0.5)
    assert math.isfinite(abs(m)) and s > 709


def test_coeff_hook_changes_result(charlier):
    def bumped(family, n):
        b, c = fam.recurrence_coeffs(family, n)
        return b + 1e-3, c

    base = fam.eval_poly(charlier, PolyKind.MONIC, 5, 0.3)
    assert fam.eval_poly(charlier, PolyKind.MONIC, 5, 0.3, coeffs=bumped) != base


def test_weights_and_step_distribution(charlier, meixner):
    w = fam.weights(charlier)
    first = [next(w) for _ in range(4)]
    assert first == pytest.approx([1, 1.23, 1.23**2 / 2, 1.23**3 / 6])
    assert fam.weight_term(meixner, 3).to_real() == pytest.approx(1.23 * 2.23 * 3.23 * 0.36**3 / 6)
    assert fam.step_distribution(charlier, -0.5) == 0
    assert fam.step_distribution(charlier, 1.5) == pytest.approx(2.23)
    assert fam.step_distribution(charlier, 200) == pytest.approx(math.exp(1.23), rel=1e-14)


def test_moments(charlier, meixner):
    assert fam.moment(charlier, 0) == pytest.approx(math.exp(1.23), rel=1e-14)
    assert fam.moment(meixner, 0) == pytest.approx(0.64**-1.23, rel=1e-14)
    # mean of Poisson(a) times e^a; mean of the negative binomial times mass
    assert fam.moment(charlier, 1) == pytest.approx(1.23 * math.exp(1.23), rel=1e-13)
    assert fam.moment(meixner, 1) == pytest.approx(1.23 * 0.36 / 0.64 * 0.64**-1.23, rel=1e-13)
    # second Poisson moment a(a+1)
    assert fam.moment(charlier, 2) == pytest.approx(1.23 * 2.23 * math.exp(1.23), rel=1e-13)


def test_squared_norms_vs_direct_sum(family):
    for n in range(6):
        value, k_stop = fam.orthogonality_sum(family, n, n)
        assert value == pytest.approx(fam.squared_norm(family, n), rel=1e-12)
        assert k_stop >= 20


def test_orthogonality(family):
    for n in range(6):
        for m in range(n):
            value, _ = fam.orthogonality_sum(family, n, m)
            assert abs(value) <= 1e-10 * fam.squared_norm(family, n)


def test_zeros_of_small_degree_are_real_positive(family):
    import numpy as np

    from mehler_heine.zeros import poly_zeros

    for n in range(1, 11):
        zs = poly_zeros(family, PolyKind.MONIC, n).zeros
        assert np.all(zs > 0)
        for z in zs:
            value = fam.eval_poly(family, PolyKind.MONIC, n, z)
            scale = max(abs(fam.eval_poly(family, PolyKind.MONIC, n, z + d)) for d in (-0.1, 0.1))
            assert abs(value) <= 1e-9 * scale


def _fraction_monic(family, n, x, associated):
    from fractions import Fraction

    x = Fraction(x)
    if isinstance(family, Charlier):
        a = Fraction(family.a)
        bc = lambda k: (k + a, a * k)
    else:
        beta, c = Fraction(family.beta), Fraction(family.c)
        bc = lambda k: ((k + (k + beta) * c) / (1 - c), k * (k + beta - 1) * c / (1 - c) ** 2)
    if associated and n == 0:
        return Fraction(0)
    prev, cur = Fraction(0), Fraction(1)
    for k in range(1 if associated else 0, n):
        b_k, c_k = bc(k)
        prev, cur = cur, (x - b_k) * cur - c_k * prev
    return cur


@pytest.mark.parametrize("kind", [PolyKind.MONIC, PolyKind.ASSOCIATED])
@pytest.mark.parametrize("x", [0.0, 3.0, 25.0, 25.0004, 7.0 - 2e-4])
def test_exact_near_lattice(family, kind, x):
    # the forward recurrence in floats is useless here for large n
    for n in (10, 60, 150):
        want = _fraction_monic(family, n, x, kind is PolyKind.ASSOCIATED)
        m, s = fam.eval_poly_scaled(family, kind, n, x)
        if want == 0:
            assert m == 0
            continue
        with mp.workdps(40):
            ratio = abs(m) * mp.exp(mp.mpf(s) - mp.log(abs(mp.mpf(want.numerator) / want.denominator)))
        # s is a log scale of a few hundred; exp(s) carries eps * s
        assert abs(float(ratio) - 1) <= 4e-16 * max(1.0, s)
        assert (m.real > 0) == (want > 0)


@given(st.integers(0, 30), st.integers(0, 30))
def test_charlier_self_duality(n, k):
    c = Charlier(1.23)
    assert fam.eval_poly(c, PolyKind.STANDARD, n, float(k)) == pytest.approx(
        fam.eval_poly(c, PolyKind.STANDARD, k, float(n)), rel=1e-12
    )


def test_near_lattice_window():
    assert fam.near_lattice(3 + 5e-4j)
    assert fam.near_lattice(0.0)
    assert not fam.near_lattice(-1.0)
    assert not fam.near_lattice(2.5)
    assert not fam.near_lattice(4 + 2e-3)
