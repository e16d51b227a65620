"""Seeded random rational instances for the invariant suites and tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .lines import SigmaMap, StartingPoints, vanishing_poly


def rng_for(seed, *labels) -> random.Random:
    """Independent deterministic stream for ``(seed, labels...)``."""
    return random.Random(":".join(str(x) for x in (seed,) + labels))


def random_rational(rng: random.Random, num: int = 9, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_points(rng, k, avoid=(), nonzero_sum=True, num=9, den=4):
    """``k`` distinct rationals avoiding ``avoid``; nonzero sum if asked and ``k >= 1``."""
    while True:
        pts = []
        while len(pts) < k:
            x = random_rational(rng, num, den)
            if x not in pts and x not in avoid:
                pts.append(x)
        if not nonzero_sum or k == 0 or sum(pts) != 0:
            return tuple(pts)


def random_sigma(rng, k) -> SigmaMap:
    return SigmaMap(rng.randint(1, k) for _ in range(k))


@dataclass(frozen=True)
class LineInstance:
    c: tuple
    sigma: SigmaMap
    d: int

    @property
    def m(self):
        return len(self.sigma) + 1


def random_line_instance(rng, d_min=3, d_max=5, m_min=2, m_max=None) -> LineInstance:
    """``m_min <= m < d`` with ``d_min <= d <= d_max``."""
    while True:
        d = rng.randint(d_min, d_max)
        hi = d - 1 if m_max is None else min(m_max, d - 1)
        if hi >= m_min:
            break
    m = rng.randint(m_min, hi)
    return LineInstance(random_points(rng, m - 1), random_sigma(rng, m - 1), d)


def random_probe(rng, base, num=9, den=4) -> Fraction:
    """A rational off the roots of ``A``."""
    A = vanishing_poly(base)
    while True:
        p = random_rational(rng, num, den)
        if A(p):
            return p


def random_starting_points(rng, m, equal_probes=False) -> StartingPoints:
    """``c_1..c_{m+1}`` with distinct base, nonzero base sum and ``A(c_m), A(c_{m+1}) != 0``."""
    base = random_points(rng, m - 1)
    cm = random_probe(rng, base)
    if equal_probes:
        return StartingPoints(base + (cm, cm))
    while True:
        cm1 = random_probe(rng, base)
        if cm1 != cm:
            return StartingPoints(base + (cm, cm1))


__all__ = [
    "rng_for", "random_rational", "random_points", "random_sigma", "LineInstance",
    "random_line_instance", "random_probe", "random_starting_points",
]
