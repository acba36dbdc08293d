"""Condition checkers for Hermitian metric classes given by a fundamental 2-form."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .core.forms import BiForm, conj, d, ddbar, power
from .core.positivity import Point, is_positive_definite_at
from .errors import BidegreeError, PreconditionError

__all__ = [
    "MetricForm",
    "Verdict",
    "ConditionReport",
    "check_kahler",
    "check_k_special",
    "check_special",
    "check_skt",
    "check_astheno",
    "check_balanced",
    "check_gauduchon",
    "classify",
]


@dataclass(frozen=True)
class MetricForm:
    """A real, pointwise-positive (1,1)-form.

    Positivity is certified only at ``sample_points`` (an empty list skips it).
    """

    omega: BiForm
    sample_points: Tuple[Point, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sample_points", tuple(self.sample_points))
        if not self.omega.is_pure(1, 1):
            raise BidegreeError("fundamental form must be of bidegree (1,1)")
        if conj(self.omega) != self.omega:
            raise BidegreeError("fundamental form must be real")
        for p in self.sample_points:
            if not is_positive_definite_at(self.omega, p):
                coords = ", ".join(str(c) for c in p.coordinates)
                raise PreconditionError(f"form is not positive definite at ({coords})")

    @property
    def dim(self) -> int:
        return self.omega.dim


@dataclass(frozen=True)
class Verdict:
    name: str
    holds: bool
    witness: Optional[BiForm] = None
    detail: str = ""

    def __post_init__(self):
        if not self.holds and (self.witness is None or not self.witness):
            raise ValueError("a failing verdict needs a nonzero witness")


@dataclass
class ConditionReport:
    dim: int
    verdicts: Dict[str, Verdict] = field(default_factory=dict)

    def __getitem__(self, name: str) -> Verdict:
        return self.verdicts[name]

    def __contains__(self, name: str) -> bool:
        return name in self.verdicts

    def all_hold(self) -> bool:
        return all(v.holds for v in self.verdicts.values())

    def failing(self) -> List[str]:
        return [k for k, v in self.verdicts.items() if not v.holds]


def _verdict(name: str, witness: BiForm, detail: str = "") -> Verdict:
    if witness:
        return Verdict(name, False, witness, detail)
    return Verdict(name, True, None, detail)


def _ddbar_power(m: MetricForm, k: int) -> BiForm:
    return ddbar(power(m.omega, k))


def check_kahler(m: MetricForm) -> Verdict:
    return _verdict("kahler", d(m.omega))


def check_k_special(m: MetricForm, k: int) -> Verdict:
    """ddbar(omega^i) = 0 for every i = 1..k; the witness is the first failure."""
    n = m.dim
    if not 1 <= k <= n - 1:
        raise PreconditionError(f"k must lie in 1..{n - 1}, got {k}")
    name = f"k_special_{k}"
    for i in range(1, k + 1):
        w = _ddbar_power(m, i)
        if w:
            return Verdict(name, False, w, f"fails at power {i}")
    return Verdict(name, True)


def check_special(m: MetricForm) -> Verdict:
    if m.dim < 2:
        raise PreconditionError("special metrics need n >= 2")
    v = check_k_special(m, m.dim - 1)
    return Verdict("special", v.holds, v.witness, v.detail)


def check_skt(m: MetricForm) -> Verdict:
    if m.dim < 2:
        raise PreconditionError("SKT needs n >= 2")
    return _verdict("skt", _ddbar_power(m, 1))


def check_astheno(m: MetricForm) -> Verdict:
    if m.dim < 3:
        raise PreconditionError("astheno-Kahler needs n >= 3 (power n-2 must be positive)")
    return _verdict("astheno_kahler", _ddbar_power(m, m.dim - 2))


def check_balanced(m: MetricForm) -> Verdict:
    if m.dim < 2:
        raise PreconditionError("balanced needs n >= 2")
    return _verdict("balanced", d(power(m.omega, m.dim - 1)))


def check_gauduchon(m: MetricForm) -> Verdict:
    if m.dim < 2:
        raise PreconditionError("Gauduchon needs n >= 2")
    return _verdict("gauduchon", _ddbar_power(m, m.dim - 1))


def classify(m: MetricForm) -> ConditionReport:
    """Run every checker that applies in dimension n."""
    n = m.dim
    report = ConditionReport(n)
    report.verdicts["kahler"] = check_kahler(m)
    if n >= 2:
        report.verdicts["skt"] = check_skt(m)
        if n >= 3:
            report.verdicts["astheno_kahler"] = check_astheno(m)
        report.verdicts["balanced"] = check_balanced(m)
        report.verdicts["gauduchon"] = check_gauduchon(m)
        report.verdicts["special"] = check_special(m)
        for k in range(1, n):
            report.verdicts[f"k_special_{k}"] = check_k_special(m, k)
    return report
