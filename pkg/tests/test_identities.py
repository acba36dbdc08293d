import pytest

from hermcalc.core import forms
from hermcalc import vector_forms
from hermcalc.identities import IDENTITIES, MUTATIONS, case_rng, mutated, run_identity, run_suite


def test_suite_passes_for_several_seeds():
    for seed in (0, 1, 2):
        assert all(r.passed for r in run_suite(seed, n=3, cases=4))


def test_case_generators_are_reproducible():
    a = case_rng(5, "leibniz", 3).random()
    b = case_rng(5, "leibniz", 3).random()
    assert a == b != case_rng(5, "leibniz", 4).random()


def test_every_identity_runs_at_n1():
    results = run_suite(0, n=1, cases=3)
    assert len(results) == len(IDENTITIES)
    assert all(r.status in ("pass", "vacuous") for r in results)


@pytest.mark.parametrize("name", sorted(MUTATIONS))
def test_mutations_are_detected_and_restored(name):
    orig_delbar, orig_interior = forms.delbar, vector_forms.interior_dz
    results = run_suite(0, n=3, cases=10, mutation=name)
    failing = [r for r in results if r.status == "fail"]
    assert failing and all(r.witness and r.failing_case for r in failing)
    assert forms.delbar is orig_delbar and vector_forms.interior_dz is orig_interior
    assert all(r.passed for r in run_suite(0, n=3, cases=2))


def test_unknown_mutation():
    with pytest.raises(KeyError):
        with mutated("nope"):
            pass


def test_failing_case_is_replayable():
    ident = next(i for i in IDENTITIES if i.name == "dolbeault_squares")
    with mutated("delbar-sign"):
        res = run_identity(ident, 0, 3, 10)
        seed, name, index = res.failing_case.split("/")
        r = case_rng(int(seed), name, int(index))
        assert ident.case(r, r.randint(ident.min_dim, min(3, ident.max_dim))) is not None
