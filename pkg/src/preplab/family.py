"""Normal-form families ``z^d + t_1 z^{m-1} + ... + t_m`` and their orbits."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import NEG_INF, BiPoly, DensePoly, Ring, bipoly_orbit_step, to_text, tpoly
from .errors import ContractError, InvalidInputError, ResourceError
from .lines import Line

#: Largest t-degree an orbit value may reach.
DEFAULT_DEG_CAP = 10 ** 4
#: Default number of steps for exact preperiodicity detection.
DEFAULT_STEP_CAP = 64
#: Orbit values whose numerator or denominator exceed this many bits give up.
DEFAULT_BIT_CAP = 1 << 16


class DegenerateLineWarning(UserWarning):
    """The line has ``alpha_2 = 0``; the commutant arguments do not apply."""


@dataclass(frozen=True)
class Family:
    d: int
    m: int

    def __post_init__(self):
        if self.d < 2 or not self.d > self.m >= 1:
            raise InvalidInputError(f"need d > m >= 1 and d >= 2, got d={self.d}, m={self.m}")


def specialize_point(fam: Family, a) -> DensePoly:
    """``f_a(z)``: substitute ``t_i = a_i``.

    The result is over Q when every ``a_i`` is exact, otherwise over C.
    """
    a = list(a)
    if len(a) != fam.m:
        raise InvalidInputError(f"expected {fam.m} parameters, got {len(a)}")
    ring = Ring.C if any(isinstance(x, (float, complex)) for x in a) else Ring.Q
    coeffs = [0] * (fam.d + 1)
    coeffs[fam.d] = 1
    for i, ai in enumerate(a, 1):
        coeffs[fam.m - i] = ai
    return DensePoly(coeffs, ring)


def specialize_line(fam: Family, line: Line) -> BiPoly:
    """``g_t(z) = z^d + t z^{m-1} + sum_{i>=2} (alpha_i t + beta_i) z^{m-i}``."""
    if line.m != fam.m:
        raise InvalidInputError(
            f"line has {len(line.alpha)} (alpha, beta) pairs, family needs {fam.m - 1}")
    if fam.m >= 2 and line.alpha[0] == 0:
        warnings.warn("alpha_2 = 0: degenerate line", DegenerateLineWarning, stacklevel=2)
    zc = [tpoly([])] * (fam.d + 1)
    zc[fam.d] = tpoly([1])
    zc[fam.m - 1] = tpoly([0, 1])
    for i, (al, be) in enumerate(zip(line.alpha, line.beta), 2):
        zc[fam.m - i] = tpoly([be, al])
    return BiPoly(zc)


@dataclass
class OrbitRecord:
    """``values[n]`` is ``g_t^n(c)`` as a TPoly; ``degrees[n]`` its t-degree."""

    values: list
    degrees: list = field(default_factory=list)

    def __post_init__(self):
        if not self.degrees:
            self.degrees = [v.degree for v in self.values]

    def to_json(self):
        return [{"n": n, "poly": to_text(v, "t"),
                 "deg_t": None if deg is NEG_INF else deg}
                for n, (v, deg) in enumerate(zip(self.values, self.degrees))]


def orbit(g: BiPoly, c, n_max: int, deg_cap: int = DEFAULT_DEG_CAP) -> OrbitRecord:
    """Exact orbit ``c, g_t(c), ..., g_t^{n_max}(c)`` in Q[t]."""
    if n_max < 0:
        raise InvalidInputError("n_max must be >= 0")
    d = g.degree
    for n in range(1, n_max + 1):
        if d ** (n - 1) > deg_cap:
            raise ResourceError(
                f"iterate n={n} has t-degree up to {d ** (n - 1)} > cap {deg_cap}", n=n)
    values = [c if isinstance(c, DensePoly) else tpoly([c])]
    for n in range(1, n_max + 1):
        nxt = bipoly_orbit_step(g, values[-1])
        if nxt.degree is not NEG_INF and nxt.degree > deg_cap:
            raise ResourceError(f"iterate n={n} has t-degree {nxt.degree} > cap {deg_cap}", n=n)
        values.append(nxt)
    return OrbitRecord(values)


@dataclass
class DegreeLawReport:
    holds: bool
    degrees: tuple
    expected: tuple
    a_at_c: Fraction

    def __bool__(self):
        return self.holds


def check_degree_law(g: BiPoly, A: DensePoly, c, n_max: int,
                     deg_cap: int = DEFAULT_DEG_CAP) -> DegreeLawReport:
    """Compare ``deg_t g^n(c)`` with ``d^{n-1}`` (or 0 when ``A(c) = 0``)."""
    d = g.degree
    ac = A(c)
    rec = orbit(g, c, n_max, deg_cap)
    got = tuple(rec.degrees[1:])
    if ac:
        want = tuple(d ** (n - 1) for n in range(1, n_max + 1))
        return DegreeLawReport(got == want, got, want, ac)
    # persistently preperiodic: every iterate is a constant (possibly 0)
    want = (0,) * n_max
    return DegreeLawReport(all(v.is_constant() for v in rec.values[1:]), got, want, ac)


@dataclass(frozen=True)
class Preperiodic:
    n: int
    k: int


@dataclass(frozen=True)
class Escapes:
    step: int


@dataclass(frozen=True)
class Unknown:
    steps: int
    reason: str = "step cap"


def escape_radius(p: DensePoly):
    """``1 + sum_{i<d} |p_i|`` for monic ``p``; beyond it ``|p(x)| > |x|``."""
    return 1 + sum(abs(c) for c in p.coeffs[:-1])


def is_preperiodic_exact(p: DensePoly, c, step_cap: int = DEFAULT_STEP_CAP,
                         bit_cap: int = DEFAULT_BIT_CAP):
    """Exact orbit test over Q.

    Returns ``Preperiodic(n, k)`` for the least ``n`` with ``p^n(c) = p^k(c)``
    (``k < n``), ``Escapes(s)`` when ``|p^s(c)|`` exceeds the escape radius,
    or ``Unknown`` when neither certificate appears within ``step_cap`` steps.
    """
    if p.ring is not Ring.Q:
        raise ContractError("is_preperiodic_exact works over Q")
    if p.degree is NEG_INF or p.degree < 2 or not p.is_monic():
        raise InvalidInputError("need a monic polynomial of degree >= 2")
    radius = escape_radius(p)
    x = Fraction(c)
    seen = {x: 0}
    for n in range(1, step_cap + 1):
        x = p(x)
        if x in seen:
            return Preperiodic(n, seen[x])
        if abs(x) > radius:
            return Escapes(n)
        if max(x.numerator.bit_length(), x.denominator.bit_length()) > bit_cap:
            return Unknown(n, "bit cap")
        seen[x] = n
    return Unknown(step_cap)
