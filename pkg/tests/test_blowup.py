from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hermcalc import randgen as rg
from hermcalc.blowup import (
    BlowupInstance,
    binomial_expansion_residual,
    blowup_chart_pullback,
    ddbar_power_by_N,
    incidence_chart,
    k_special_preserved,
    perturbed_form,
    positivity_threshold,
    product_special_check,
)
from hermcalc.core import BiForm, I, Point, Poly, conj, d, ddbar, power, pullback, wedge
from hermcalc.errors import HypothesisError, NotClosedError, PreconditionError
from hermcalc.instances import search_metric, skt_non_kahler, special_non_kahler
from hermcalc.metrics import MetricForm, check_k_special

from conftest import flat, mono

seeds = st.integers(0, 10 ** 6)


def metric_like(r, n):
    return MetricForm(rg.random_constant_11(r, n) + rg.random_real_11(r, n, max_deg=2))


def test_constant_data_gives_zero_residual():
    r = rg.rng(0)
    b = BlowupInstance(MetricForm(rg.random_constant_11(r, 3)), rg.random_constant_11(r, 3), 2)
    assert not binomial_expansion_residual(b)


@given(seeds)
def test_binomial_expansion_with_closed_omega(seed):
    r = rg.rng(seed)
    n = r.randint(1, 4)
    b = BlowupInstance(metric_like(r, n), rg.random_closed_11(r, n), r.randint(1, 3))
    assert not d(b.omega)
    assert not binomial_expansion_residual(b)


@given(seeds)
def test_N_coefficients_match_binomial_terms(seed):
    r = rg.rng(seed)
    n = r.randint(2, 3)
    k = r.randint(1, 3)
    b = BlowupInstance(metric_like(r, n), rg.random_closed_11(r, n), k)
    by_N = ddbar_power_by_N(b, k)
    for l in range(k + 1):
        expected = ddbar(power(b.F.omega, l))
        if k - l:
            expected = wedge(expected, power(b.omega, k - l))
        expected = expected.scale(comb(k, l))
        assert by_N.get(k - l, BiForm.zero(n)) == expected


def test_non_closed_omega():
    r = rg.rng(0)
    F = metric_like(r, 3)
    omega = rg.random_constant_11(r, 3) + rg.random_real_11(r, 3, max_deg=2)
    b = BlowupInstance(F, omega, 2)
    with pytest.raises(NotClosedError) as info:
        binomial_expansion_residual(b)
    assert info.value.witness == d(omega) and info.value.witness
    assert binomial_expansion_residual(b, check_closed=False)


def test_non_closed_omega_k1_residual_is_N_ddbar_omega():
    omega = flat(2) + BiForm.monomial(2, (2,), (2,), mono(z1=1, zb1=1).scale(I))
    b = BlowupInstance(MetricForm(flat(2)), omega, 1)
    assert binomial_expansion_residual(b, check_closed=False) == ddbar(omega).scale(Poly.N())


def test_kahler_F_is_preserved_for_every_k():
    r = rg.rng(1)
    for n in (2, 3, 4):
        for k in range(1, n):
            b = BlowupInstance(MetricForm(flat(n)), rg.random_closed_11(r, n), k)
            assert k_special_preserved(b).holds


def test_k_special_but_not_k_plus_one_special():
    F = search_metric(3, lambda m: check_k_special(m, 1).holds and not check_k_special(m, 2).holds)
    assert F is not None
    omega = rg.random_closed_11(rg.rng(2), 3)
    assert k_special_preserved(BlowupInstance(F, omega, 1)).holds
    with pytest.raises(HypothesisError):
        k_special_preserved(BlowupInstance(F, omega, 2))
    # at i = k + 1 the l = k + 1 term survives as the N^0 coefficient
    by_N = ddbar_power_by_N(BlowupInstance(F, omega, 2), 2)
    assert by_N[0] == ddbar(power(F.omega, 2)) and by_N[0]


def test_special_metric_on_c3_with_curvature_form():
    F = special_non_kahler(3)
    omega = BiForm.monomial(3, (1,), (1,), I)
    for k in (1, 2):
        assert k_special_preserved(BlowupInstance(F, omega, k)).holds


def test_k_special_preserved_requires_closed_omega():
    F = MetricForm(flat(2))
    omega = BiForm.monomial(2, (1,), (1,), (Poly.one() + Poly.z(2) + Poly.zb(2)).scale(I))
    with pytest.raises(NotClosedError):
        k_special_preserved(BlowupInstance(F, omega, 1))


def test_N_is_reserved():
    F = MetricForm(flat(2))
    with pytest.raises(PreconditionError):
        BlowupInstance(F, flat(2).scale(Poly.N()), 1)


# -- charts and positivity ----------------------------------------------------------------


def test_point_blowup_chart():
    sigma = incidence_chart(2, 0, 1)
    assert sigma.components == (Poly.z(1), Poly.z(1) * Poly.z(2))
    pulled = blowup_chart_pullback(flat(2), sigma)
    dz, dzb = BiForm.dz, BiForm.dzb
    v_du_u_dv = dz(1, 2).scale(Poly.z(2)) + dz(2, 2).scale(Poly.z(1))
    conj_part = dzb(1, 2).scale(Poly.zb(2)) + dzb(2, 2).scale(Poly.zb(1))
    assert pulled == BiForm.monomial(2, (1,), (1,), I) + (v_du_u_dv ^ conj_part).scale(I)
    assert pulled.is_pure(1, 1) and conj(pulled) == pulled


def test_incidence_chart_along_a_line_in_c3():
    chart = incidence_chart(3, 1, 2)
    assert chart.components == (Poly.z(1), Poly.z(2), Poly.z(2) * Poly.z(3))
    with pytest.raises(ValueError):
        incidence_chart(3, 1, 1)
    with pytest.raises(ValueError):
        incidence_chart(3, 3, 3)


def test_positivity_threshold_examples():
    pulled = blowup_chart_pullback(flat(2), incidence_chart(2, 0, 1))
    origin = [Point.origin(2)]
    assert positivity_threshold(pulled, flat(2), origin) == 1
    assert positivity_threshold(pulled, BiForm.zero(2), origin) is None
    assert positivity_threshold(flat(2), rg.random_real_11(rg.rng(0), 2), origin) == 0
    with pytest.raises(PreconditionError):
        positivity_threshold(pulled, flat(2), [])


@given(seeds)
def test_positivity_threshold_is_monotone(seed):
    r = rg.rng(seed)
    pulled = blowup_chart_pullback(flat(2), incidence_chart(2, 0, r.randint(1, 2)))
    omega = rg.random_constant_11(r, 2)
    pts = [rg.random_point(r, 2, 1) for _ in range(3)]
    small = positivity_threshold(pulled, omega, pts[:1], cap=50)
    large = positivity_threshold(pulled, omega, pts, cap=50)
    assert small is not None and large is not None and small <= large


@given(seeds)
def test_chart_pullback_commutes_with_ddbar(seed):
    r = rg.rng(seed)
    n = r.randint(2, 3)
    m = r.randint(0, n - 1)
    chart = incidence_chart(n, m, r.randint(m + 1, n))
    F = metric_like(r, n).omega
    l = r.randint(1, 2)
    assert pullback(chart, ddbar(power(F, l))) == ddbar(pullback(chart, power(F, l)))


# -- product remark ----------------------------------------------------------------------------


def test_product_of_kahler_factors():
    assert product_special_check(MetricForm(flat(2)), MetricForm(flat(1))).holds


def test_product_with_special_non_kahler_factor():
    for F_A in (skt_non_kahler(2), special_non_kahler(3)):
        assert d(F_A.omega)
        assert product_special_check(F_A, MetricForm(flat(1))).holds
        assert product_special_check(F_A, MetricForm(flat(2))).holds


def test_product_preconditions():
    F_A = skt_non_kahler(2)
    non_closed = MetricForm(flat(2) + BiForm.monomial(2, (1,), (2,), Poly.z(2).scale(I))
                            + BiForm.monomial(2, (2,), (1,), Poly.zb(2).scale(I)))
    with pytest.raises(HypothesisError):
        product_special_check(F_A, non_closed)
    with pytest.raises(PreconditionError):
        product_special_check(F_A, MetricForm(flat(1)), offset=1)
    not_special = MetricForm(flat(2) + BiForm.monomial(2, (2,), (2,), mono(z1=1, zb1=1).scale(I)))
    with pytest.raises(HypothesisError):
        product_special_check(not_special, MetricForm(flat(1)))


def test_perturbed_form_is_linear_in_N():
    b = BlowupInstance(MetricForm(flat(2)), flat(2), 1)
    assert perturbed_form(b) == flat(2).scale(Poly.one() + Poly.N())
