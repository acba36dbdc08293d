import os

from hypothesis import HealthCheck, settings

from hermcalc.core import BiForm, I, Poly

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=int(os.environ.get("HERMCALC_EXAMPLES", "40")),
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


def flat(n, order=2):
    out = BiForm.zero(n, order)
    for j in range(1, n + 1):
        out = out + BiForm.monomial(n, (j,), (j,), I, order)
    return out


def mono(**exps):
    """Poly monomial from keyword exponents, e.g. mono(z1=1, zb2=1, t=1)."""
    from hermcalc.core import parse_var

    return Poly.monomial({parse_var(k): v for k, v in exps.items()})


ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
