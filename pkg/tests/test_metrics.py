import pytest
from hypothesis import given
from hypothesis import strategies as st

from hermcalc import randgen as rg
from hermcalc.core import BiForm, HoloMap, I, Point, Poly, d, ddbar, pullback
from hermcalc.errors import BidegreeError, PreconditionError
from hermcalc.instances import candidate_metrics, skt_non_kahler, special_non_kahler
from hermcalc.metrics import (
    MetricForm,
    Verdict,
    check_astheno,
    check_balanced,
    check_gauduchon,
    check_k_special,
    check_kahler,
    check_skt,
    check_special,
    classify,
)

from conftest import flat, mono


def metric(omega, points=None):
    n = omega.dim
    return MetricForm(omega, (Point.origin(n),) if points is None else points)


def test_flat_is_kahler_and_everything_else():
    for n in (1, 2, 3, 4):
        rep = classify(metric(flat(n)))
        assert rep.all_hold()
        assert "kahler" in rep


def test_closed_perturbation_stays_kahler():
    # adding i del delbar(z1 zb1 z2 zb2) keeps the form closed
    pot = BiForm.function(2, mono(z1=1, zb1=1, z2=1, zb2=1))
    w = flat(2) + ddbar(pot).scale(I)
    assert check_kahler(metric(w)).holds


def test_radial_first_coefficient_is_still_kahler():
    # i(1 + z1 zb1) dz1^dzb1 + i dz2^dzb2: d of the first term contains dzb1 twice or dz1 twice
    w = BiForm.monomial(2, (1,), (1,), (Poly.one() + mono(z1=1, zb1=1)).scale(I)) + BiForm.monomial(2, (2,), (2,), I)
    assert check_kahler(metric(w)).holds


def test_k_special_witness():
    w = flat(2) + BiForm.monomial(2, (2,), (2,), mono(z1=1, zb1=1).scale(I))
    v = check_k_special(metric(w), 1)
    assert not v.holds
    assert v.witness == BiForm.monomial(2, (1,), (1,), I) ^ BiForm.monomial(2, (2,), (2,), 1)
    assert str(v.witness) == "(-i) dz1^dz2^dzb1^dzb2"
    assert not check_skt(metric(w)).holds


def test_k_range_and_dimension_preconditions():
    m2 = metric(flat(2))
    with pytest.raises(PreconditionError):
        check_k_special(m2, 2)
    with pytest.raises(PreconditionError):
        check_k_special(m2, 0)
    with pytest.raises(PreconditionError):
        check_astheno(m2)
    with pytest.raises(PreconditionError):
        check_special(metric(flat(1)))


def test_metric_form_validation():
    with pytest.raises(BidegreeError):
        MetricForm(BiForm.dz(1, 2))
    with pytest.raises(BidegreeError):
        MetricForm(BiForm.monomial(2, (1,), (1,), 1))  # not real
    with pytest.raises(PreconditionError):
        metric(flat(2).scale(-1))


def test_failing_verdict_requires_witness():
    with pytest.raises(ValueError):
        Verdict("x", False, BiForm.zero(2))


def test_skt_non_kahler_instance():
    m = skt_non_kahler(2)
    assert m is not None
    assert str(m.omega) == "(i) dz1^dzb1 + (i*z2) dz1^dzb2 + (i*zb2) dz2^dzb1 + (i) dz2^dzb2"
    rep = classify(m)
    assert not rep["kahler"].holds and rep["kahler"].witness == d(m.omega)
    assert rep["skt"].holds
    assert rep["special"].holds and rep["k_special_1"].holds
    assert not rep["balanced"].holds


def test_special_non_kahler_instance_on_c3():
    m = special_non_kahler(3)
    assert m is not None
    rep = classify(m)
    assert not rep["kahler"].holds
    assert rep["special"].holds and rep["skt"].holds and rep["astheno_kahler"].holds and rep["gauduchon"].holds
    assert not rep["balanced"].holds


def test_n2_skt_coincides_with_1_special():
    for w in candidate_metrics(2):
        m = MetricForm(w)
        assert check_skt(m).holds == check_k_special(m, 1).holds


def _implications(rep):
    if rep["kahler"].holds:
        assert rep.all_hold()
    if "special" in rep and rep["special"].holds:
        assert rep["skt"].holds and rep["gauduchon"].holds
        if "astheno_kahler" in rep:
            assert rep["astheno_kahler"].holds
    for name in rep.failing():
        assert rep[name].witness


def test_implications_over_candidates():
    for n in (2, 3):
        for w in candidate_metrics(n):
            _implications(classify(MetricForm(w)))


@given(st.integers(0, 10 ** 6))
def test_implications_on_random_metrics(seed):
    r = rg.rng(seed)
    n = r.randint(2, 3)
    w = rg.random_constant_11(r, n) + rg.random_real_11(r, n, max_deg=2)
    _implications(classify(MetricForm(w)))


@given(st.integers(0, 10 ** 6))
def test_verdicts_invariant_under_coordinate_permutation(seed):
    r = rg.rng(seed)
    n = r.randint(2, 3)
    w = rg.random_constant_11(r, n) + rg.random_real_11(r, n, max_deg=2)
    perm = list(range(1, n + 1))
    r.shuffle(perm)
    relabel = HoloMap(n, n, tuple(Poly.z(i) for i in perm))
    a, b = classify(MetricForm(w)), classify(MetricForm(pullback(relabel, w)))
    assert {k: v.holds for k, v in a.verdicts.items()} == {k: v.holds for k, v in b.verdicts.items()}
