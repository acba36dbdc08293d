"""Deterministic small-instance search for non-Kahler metrics with ddbar conditions.

Candidates are the flat metric on C^n plus one Hermitian off-diagonal pair

    i (a dz^j ^ dzbar^k + conj(a) dz^k ^ dzbar^j),   j < k,

with ``a`` running over degree-one monomials z^m, zbar^m. Every candidate is
positive at the origin, so the first hit is a valid MetricForm there.
"""

from __future__ import annotations

from itertools import product
from typing import Callable, Iterator, Optional

from .core.forms import BiForm
from .core.poly import Poly
from .core.positivity import Point
from .core.scalar import I
from .metrics import MetricForm, check_kahler, check_skt, check_special

__all__ = ["flat_metric", "candidate_metrics", "search_metric", "skt_non_kahler", "special_non_kahler"]


def flat_metric(n: int, order: int = 2) -> BiForm:
    """i * sum dz^j ^ dzbar^j."""
    out = BiForm.zero(n, order)
    for j in range(1, n + 1):
        out = out + BiForm.monomial(n, (j,), (j,), I, order)
    return out


def candidate_metrics(n: int) -> Iterator[BiForm]:
    base = flat_metric(n)
    monos = [Poly.z(m) for m in range(1, n + 1)] + [Poly.zb(m) for m in range(1, n + 1)]
    for j, k in product(range(1, n + 1), repeat=2):
        if j >= k:
            continue
        for a in monos:
            pert = BiForm.monomial(n, (j,), (k,), a.scale(I)) + BiForm.monomial(n, (k,), (j,), a.conj().scale(I))
            yield base + pert


def search_metric(n: int, accept: Callable[[MetricForm], bool]) -> Optional[MetricForm]:
    origin = Point.origin(n)
    for omega in candidate_metrics(n):
        m = MetricForm(omega, (origin,))
        if accept(m):
            return m
    return None


def skt_non_kahler(n: int = 2) -> Optional[MetricForm]:
    return search_metric(n, lambda m: not check_kahler(m).holds and check_skt(m).holds)


def special_non_kahler(n: int = 3) -> Optional[MetricForm]:
    return search_metric(n, lambda m: not check_kahler(m).holds and check_special(m).holds)
