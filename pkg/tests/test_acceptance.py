"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line.

All comparisons are exact (Gaussian-rational arithmetic, tolerance zero).
"""

import io
import time
from pathlib import Path

import pytest

from hermcalc import randgen as rg
from hermcalc.blowup import (
    BlowupInstance,
    binomial_expansion_residual,
    blowup_chart_pullback,
    incidence_chart,
    k_special_preserved,
    positivity_threshold,
    product_special_check,
)
from hermcalc.cli import main
from hermcalc.core import BiForm, I, Point, Poly, d, ddbar, del_, delbar, wedge
from hermcalc.deformation import (
    DeformationFamily,
    MetricFamily,
    first_order_residual,
    holomorphy_residual,
    mc_residual,
    order1_jet_oracle,
)
from hermcalc.instances import candidate_metrics, skt_non_kahler, special_non_kahler
from hermcalc.metrics import MetricForm, check_k_special
from hermcalc.vector_forms import (
    VecForm,
    conjugation_residual,
    conjugation_residual_del,
    conjugation_residual_delbar,
    endo_compose,
    exp_contract,
    extension_map,
    extension_substitution,
    interior_compose,
    simultaneous_contract,
)

from conftest import ACCEPTANCE_LINES, flat, mono

DATA = Path(__file__).parent / "data"


def record(number, title, ok, detail):
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title} ({detail})"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return ok


def seeds(tag, count):
    return [rg.rng(f"{tag}/{i}") for i in range(count)]


def test_criterion_01_dolbeault_algebra():
    start = time.perf_counter()
    bad = []
    for i, r in enumerate(seeds("dolbeault", 200)):
        n = r.randint(1, 4)
        a = rg.random_form(r, n, max_deg=3, n_terms=3)
        if d(d(a)) or del_(del_(a)) or delbar(delbar(a)) or (del_(delbar(a)) + delbar(del_(a))):
            bad.append(i)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    record(1, "d^2 = del^2 = delbar^2 = 0, del delbar + delbar del = 0", ok,
           f"200 forms, n<=4, degree<=3, {len(bad)} failures, {elapsed:.2f}s < 10s")
    assert ok


def test_criterion_02_exp_contraction_multiplicative():
    bad = 0
    for r in seeds("exp", 100):
        n = r.randint(1, 4)
        phi = rg.random_vecform(r, n, max_deg=2, n_terms=3, t_deg=2, t_min=1)
        idx = sorted(r.sample(range(1, n + 1), r.randint(1, min(4, n))))
        prod = BiForm.function(n, Poly.one())
        for i in idx:
            prod = wedge(prod, exp_contract(phi, BiForm.dz(i, n)))
        bad += prod != exp_contract(phi, BiForm.monomial(n, idx, ()))
    record(2, "e^iota dz^i1 ^ ... ^ e^iota dz^ip = e^iota(dz^I)", not bad, f"100 cases, p<=4, {bad} failures")
    assert not bad


def test_criterion_03_extension_equals_substitution():
    bad = 0
    for r in seeds("extension", 100):
        n = r.randint(1, 4)
        phi = rg.random_vecform(r, n, max_deg=2, n_terms=3, t_deg=2, t_min=1)
        a = rg.random_form(r, n, max_deg=2, n_terms=3)
        bad += extension_map(phi, a) != simultaneous_contract(extension_substitution(phi), a)
    record(3, "extension map = (I+phi+phibar) simultaneous contraction", not bad, f"100 cases, {bad} failures")
    assert not bad


def test_criterion_04_interior_equals_composition():
    bad = 0
    for r in seeds("compose", 100):
        n = r.randint(1, 4)
        phi = rg.random_vecform(r, n, max_deg=2, n_terms=4, t_deg=2, t_min=1)
        bad += interior_compose(phi, phi.conj()) != endo_compose(phi, phi.conj())
    record(4, "phibar contracted into phi = matrix product phi phibar", not bad, f"100 cases, {bad} failures")
    assert not bad


def test_criterion_05_conjugation_identity():
    bad = 0
    non_mc = 0
    for r in seeds("conjugation", 100):
        n = r.randint(1, 3)
        phi = rg.random_vecform(r, n, max_deg=2, t_deg=2, t_min=1)
        a = rg.random_form(r, n, max_deg=2)
        non_mc += not mc_residual(DeformationFamily(phi)).is_zero()
        bad += bool(conjugation_residual(phi, a) or conjugation_residual_del(phi, a)
                    or conjugation_residual_delbar(phi, a))
    record(5, "e^-iota d e^iota = d - L_phi - iota_[phi,phi]/2 (also del, delbar parts)", not bad,
           f"100 cases, {non_mc} not Maurer-Cartan, {bad} nonzero residuals")
    assert not bad


def test_criterion_06_first_order_oracle():
    start = time.perf_counter()
    bad = 0
    nonzero = 0
    for r in seeds("oracle", 100):
        n = r.randint(2, 3)
        base = MetricForm(rg.random_constant_11(r, n) + rg.random_real_11(r, n, max_deg=2))
        eta = rg.random_real_11(r, n, max_deg=2)
        mf = MetricFamily(base.omega + eta.scale(Poly.t()), base)
        fam = DeformationFamily(rg.random_vecform(r, n, max_deg=2, t_deg=2, t_min=1))
        k = r.randint(1, min(2, n - 1))
        res = first_order_residual(base, fam, mf, k)
        nonzero += bool(res)
        bad += res != order1_jet_oracle(base, fam, mf, k)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    record(6, "first-order residual = t-coefficient of deformed del o deformed delbar", ok,
           f"100 instances, n<=3, k<=2, {nonzero} nonzero residuals, {bad} mismatches, {elapsed:.2f}s < 60s")
    assert ok


def test_criterion_07_blowup_core():
    bad_binomial = 0
    hypothesis_cases = 0
    bad_preserved = 0
    special_pool = {n: [MetricForm(w) for w in candidate_metrics(n)] for n in (2, 3, 4)}
    for i, r in enumerate(seeds("blowup", 120)):
        n = r.randint(1, 4)
        k = r.randint(1, 3)
        omega = rg.random_closed_11(r, n)
        if n >= 2 and i % 2:
            F = r.choice(special_pool[n])
        else:
            F = MetricForm(rg.random_constant_11(r, n) + rg.random_real_11(r, n, max_deg=2))
        b = BlowupInstance(F, omega, k)
        bad_binomial += bool(binomial_expansion_residual(b))
        if 1 <= k <= n - 1 and check_k_special(F, k).holds:
            hypothesis_cases += 1
            bad_preserved += not k_special_preserved(b).holds
    ok = not bad_binomial and not bad_preserved and hypothesis_cases > 0
    record(7, "binomial ddbar expansion with closed omega; k-specialness preserved", ok,
           f"120 instances, n<=4, k<=3, {bad_binomial} nonzero residuals, "
           f"{hypothesis_cases} with hypothesis, {bad_preserved} not preserved")
    assert ok


def test_criterion_08_worked_values():
    w = BiForm.monomial(2, (2,), (2,), mono(z1=1, zb1=1).scale(I))
    target = BiForm.monomial(2, (1,), (1,), I) ^ BiForm.monomial(2, (2,), (2,), 1)
    ok1 = ddbar(w) == target and str(ddbar(w)) == "(-i) dz1^dz2^dzb1^dzb2"
    fam = DeformationFamily(VecForm.elementary(2, 1, BiForm.dzb(1, 2).scale(Poly.t())))
    ok2 = not holomorphy_residual(fam, mono(z1=1) + mono(zb1=1, t=1))
    pulled = blowup_chart_pullback(flat(2), incidence_chart(2, 0, 1))
    n0 = positivity_threshold(pulled, flat(2), [Point.origin(2)])
    ok3 = n0 == 1
    ok = ok1 and ok2 and ok3
    record(8, "worked values: ddbar witness, holomorphy residual 0, threshold N0 = 1", ok,
           f"witness {'ok' if ok1 else 'WRONG'}, residual {'ok' if ok2 else 'WRONG'}, N0 = {n0}")
    assert ok


def test_criterion_09_product_remark():
    F_A = special_non_kahler(3)
    F_B = skt_non_kahler(2)
    ok = (F_A is not None and d(F_A.omega) and product_special_check(F_A, MetricForm(flat(1))).holds
          and F_B is not None and product_special_check(F_B, MetricForm(flat(2))).holds)
    record(9, "special non-Kahler factor times Kahler factor is special", bool(ok),
           "C^3 x C^1 and C^2 x C^2 with searched non-Kahler special factors")
    assert ok


@pytest.mark.parametrize("argv", [("check", "skt_c2.json"), ("deform", "deform_eta.json"),
                                  ("blowup", "blowup_chart.json"), ("identities", "--seed", "11")])
def test_criterion_10_cli_determinism(tmp_path, argv):
    argv = [str(DATA / a) if a.endswith(".json") else a for a in argv]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main([*argv, "--report", str(a)], out=io.StringIO())
    main([*argv, "--report", str(b)], out=io.StringIO())
    ok = a.read_bytes() == b.read_bytes()
    prev = ACCEPTANCE_LINES.get(10)
    all_ok = ok and (prev is None or " PASS" in prev)
    record(10, "identical manifest and seed give byte-identical reports", all_ok,
           "check, deform, blowup and identities reports compared across two runs")
    assert ok
