"""Conjugacy, Chebyshev polynomials, commutants and compositional roots.

Everything here is a bounded, exact search over Q (or Q[t] for BiPolys):
each function either exhibits a witness or reports why none exists within
its caps.
"""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass
from fractions import Fraction

from .arith import (NEG_INF, BiPoly, DensePoly, Ring, principal_root, rational_root,
                    to_text)
from .errors import ContractError, FieldObstructionError, InvalidInputError, ResourceError

DEFAULT_DEG_CAP = 10 ** 4


@dataclass(frozen=True)
class LinearMap:
    """``mu(z) = a*z + b`` with ``a != 0``."""

    a: object = 1
    b: object = 0

    def __post_init__(self):
        if not self.a:
            raise InvalidInputError("a linear map needs a != 0")

    def as_poly(self, ring=Ring.Q):
        return DensePoly([self.b, self.a], ring)

    def inverse(self):
        return LinearMap(1 / self.a, -self.b / self.a)

    def conjugate(self, g):
        """``mu^{-1} o g o mu``."""
        ring = g.ring if g.ring is not Ring.T else Ring.Q
        mu = self.as_poly(ring)
        inv = self.inverse().as_poly(ring)
        if g.ring is Ring.T:
            mu, inv = BiPoly.lift(mu), BiPoly.lift(inv)
        return inv.compose(g.compose(mu))

    def is_identity(self):
        return self.a == 1 and self.b == 0

    def __str__(self):
        return to_text(self.as_poly(Ring.C if isinstance(self.a, complex) else Ring.Q), "z")


def chebyshev(d: int) -> DensePoly:
    """``T_d`` with ``T_d(w + 1/w) = w^d + w^-d``, via ``T_{k+1} = w T_k - T_{k-1}``."""
    if d < 1:
        raise InvalidInputError("chebyshev needs d >= 1")
    w = DensePoly.identity()
    prev, cur = DensePoly([2]), w
    for _ in range(d - 1):
        prev, cur = cur, w * cur - prev
    return cur


def to_normal_form(g: DensePoly):
    """Return ``(mu, ghat)`` with ``ghat = mu^{-1} o g o mu`` in normal form.

    The translation is ``b = -g_{d-1} / (d * lead)`` and the scaling solves
    ``a^{d-1} = 1/lead``; over Q a missing rational root raises
    :class:`FieldObstructionError`.
    """
    d = g.degree
    if d is NEG_INF or d < 2:
        raise InvalidInputError("to_normal_form needs degree >= 2")
    if g.ring is Ring.T:
        raise ContractError("to_normal_form works over Q or C")
    lead = g.lead
    radicand = 1 / lead
    if g.ring is Ring.Q:
        a = rational_root(radicand, d - 1)
        if a is None:
            raise FieldObstructionError(
                f"no rational {d - 1}-th root of {radicand}", radicand, d - 1)
    else:
        a = principal_root(radicand, d - 1)
    b = -g[d - 1] / (d * lead)
    mu = LinearMap(a, b)
    ghat = mu.conjugate(g)
    return mu, ghat


class Exceptional(enum.Enum):
    POWER_MAP = "PowerMap"
    PLUS_CHEBYSHEV = "PlusChebyshev"
    MINUS_CHEBYSHEV = "MinusChebyshev"
    NOT_EXCEPTIONAL = "NotExceptional"


@dataclass(frozen=True)
class ExceptionalityVerdict:
    """``witness`` is ``w`` with ``w^{-1} o g o w`` equal to the model map.

    ``rational`` is False when the only conjugating roots of unity are
    non-real; the witness then carries a floating approximation of ``a``.
    """

    kind: Exceptional
    witness: LinearMap | None = None
    rational: bool = True
    zeta: tuple | None = None

    @property
    def undecided_over_rationals(self):
        return self.kind is not Exceptional.NOT_EXCEPTIONAL and not self.rational

    def to_json(self):
        return {"kind": self.kind.value,
                "witness": None if self.witness is None else str(self.witness),
                "rational": self.rational,
                "zeta": None if self.zeta is None else {"k": self.zeta[0], "N": self.zeta[1]}}


def _matching_zetas(g, model):
    """All ``k`` with ``g(z) = zeta^-1 model(zeta z)``, ``zeta = exp(2 pi i k/N)``.

    Monic normal forms force ``zeta^{d-1} = +-1`` so ``N = 2(d-1)`` covers
    every candidate; each coefficient ratio must be ``+-1`` and pins ``k``
    modulo ``N``.
    """
    d = g.degree
    if model.degree != d:
        return [], 0
    n_roots = 2 * (d - 1)
    conds = []
    for i in range(d + 1):
        gi, xi = g[i], model[i]
        if bool(gi) != bool(xi):
            return [], n_roots
        if not gi:
            continue
        r = gi / xi
        if r == 1:
            conds.append((i - 1, 0))
        elif r == -1:
            conds.append((i - 1, n_roots // 2))
        else:
            return [], n_roots
    return [k for k in range(n_roots)
            if all((k * e) % n_roots == want for e, want in conds)], n_roots


def is_exceptional(g) -> ExceptionalityVerdict:
    """Is the normal-form ``g`` conjugate to ``z^d``, ``T_d`` or ``-T_d``?

    A BiPoly with a genuinely t-dependent coefficient is never exceptional:
    the models have constant coefficients.
    """
    if isinstance(g, BiPoly):
        if not g.is_t_constant():
            return ExceptionalityVerdict(Exceptional.NOT_EXCEPTIONAL)
        g = g.to_q()
    if g.ring is not Ring.Q:
        raise ContractError("is_exceptional works over Q")
    if not g.is_normal_form() or g.degree < 2:
        raise ContractError("is_exceptional expects a normal-form polynomial of degree >= 2")
    d = g.degree
    cheb = chebyshev(d)
    models = [(Exceptional.POWER_MAP, DensePoly.monomial(d)),
              (Exceptional.PLUS_CHEBYSHEV, cheb),
              (Exceptional.MINUS_CHEBYSHEV, -cheb)]
    for kind, model in models:
        ks, n_roots = _matching_zetas(g, model)
        if not ks:
            continue
        for k, a in ((0, 1), (n_roots // 2, -1)):
            if k in ks:
                return ExceptionalityVerdict(kind, LinearMap(Fraction(a), Fraction(0)),
                                             True, (k, n_roots))
        k = ks[0]
        zeta = cmath.exp(2j * cmath.pi * k / n_roots)
        return ExceptionalityVerdict(kind, LinearMap(1 / zeta, 0j), False, (k, n_roots))
    return ExceptionalityVerdict(Exceptional.NOT_EXCEPTIONAL)


def _common_ring(h, g):
    if isinstance(h, BiPoly) or isinstance(g, BiPoly):
        return BiPoly.lift(h), BiPoly.lift(g)
    if h.ring is not g.ring:
        raise ContractError(f"ring mismatch: {h.ring.value} vs {g.ring.value}")
    return h, g


def _iterate_capped(g, n, deg_cap, extra=1):
    d = g.degree
    if d is not NEG_INF and extra * d ** n > deg_cap:
        raise ResourceError(f"degree {extra * d ** n} of g^{n} exceeds cap {deg_cap}", n=n)
    return g.iterate(n)


def commutes(h, g, n: int = 1, deg_cap: int = DEFAULT_DEG_CAP) -> bool:
    """Exact test of ``h o g^n == g^n o h``."""
    if n < 1:
        raise InvalidInputError("n must be >= 1")
    h, g = _common_ring(h, g)
    dh = h.degree if h.degree is not NEG_INF else 0
    gn = _iterate_capped(g, n, deg_cap, max(dh, 1))
    return h.compose(gn) == gn.compose(h)


def linear_commutant(g, n_max: int = 1, deg_cap: int = DEFAULT_DEG_CAP):
    """Rational ``mu(z) = a z + b`` commuting with some ``g^n``, ``n <= n_max``.

    With ``G = g^n`` of degree ``D`` in normal form, the ``z^{D-1}``
    coefficient of ``G o mu`` is ``D a^{D-1} b`` while ``mu o G`` has none, so
    ``b = 0``.  Each nonzero ``G_j`` (``j != 1``) then demands
    ``a^{j-1} = 1``; over Q only ``a = +-1`` can qualify, and ``-1`` needs
    every such ``j - 1`` even.  Candidates are confirmed by composition.
    """
    if not g.is_normal_form():
        raise ContractError("linear_commutant expects g in normal form")
    found = [LinearMap(Fraction(1), Fraction(0))]
    gn = None
    for n in range(1, n_max + 1):
        gn = g if gn is None else g.compose(gn)
        if gn.degree > deg_cap:
            raise ResourceError(f"degree of g^{n} exceeds cap {deg_cap}", n=n)
        exps = [j - 1 for j, cj in enumerate(gn.coeffs) if cj and j != 1]
        if all(e % 2 == 0 for e in exps):
            mu = LinearMap(Fraction(-1), Fraction(0))
            if mu not in found and mu.conjugate(gn) == gn:
                found.append(mu)
    return found


@dataclass(frozen=True)
class RootSearch:
    """Outcome of :func:`compositional_root`; ``root`` is None on failure."""

    root: DensePoly | None
    witness: str | None = None

    def __bool__(self):
        return self.root is not None


def _int_root(n, e):
    s = round(n ** (1.0 / e))
    for cand in (s - 1, s, s + 1):
        if cand >= 1 and cand ** e == n:
            return cand
    return None


def compositional_root(g, e: int, deg_t_cap: int | None = None) -> RootSearch:
    """Search for ``h`` with ``h^{o e} = g`` by undetermined coefficients.

    The coefficients of ``h`` are fixed from the top down: the ``z^{D-k}``
    coefficient of ``h^{o e}`` is affine in ``h_{s-k}`` (``D = s^e``) with a
    slope that depends only on the leading coefficient, so each one is solved
    directly.  The candidate is then composed out in full and the first
    coefficient that disagrees with ``g`` is reported as the witness.
    """
    if e < 2:
        raise InvalidInputError("e must be >= 2")
    D = g.degree
    if D is NEG_INF or D < 1:
        return RootSearch(None, "g is constant")
    s = _int_root(D, e)
    if s is None or s < 2:
        return RootSearch(None, f"degree {D} is not s^{e} with s >= 2")
    bi = isinstance(g, BiPoly)
    lead = g.lead
    if bi:
        if not lead.is_constant():
            return RootSearch(None, "leading coefficient depends on t")
        lead = lead[0]
    expo = (s ** e - 1) // (s - 1)
    r = rational_root(lead, expo)
    if r is None:
        return RootSearch(None, f"leading coefficient {lead} has no rational {expo}-th root")
    leads = [r] if expo % 2 or r == 0 else [r, -r]
    witness = None
    for lc in leads:
        h, witness = _solve_root(g, e, s, lc, bi, deg_t_cap)
        if h is not None:
            return RootSearch(h, None)
    return RootSearch(None, witness)


def _build(coeffs, bi):
    return BiPoly(coeffs) if bi else DensePoly(coeffs)


def _solve_root(g, e, s, lc, bi, deg_t_cap):
    D = s ** e
    h = [0] * s + [lc]
    for k in range(1, s + 1):
        idx = s - k
        h[idx] = 0
        base = _build(h, bi).iterate(e)[D - k]
        h[idx] = 1
        slope = _build(h, bi).iterate(e)[D - k] - base
        if bi:
            slope = slope[0] if slope.is_constant() else None
        if not slope:
            return None, f"coefficient of z^{D - k} does not determine h_{idx}"
        h[idx] = (g[D - k] - base) * (1 / Fraction(slope))
        if bi and deg_t_cap is not None and h[idx].degree > deg_t_cap:
            return None, (f"h_{idx} = {to_text(h[idx], 't')} exceeds the t-degree cap "
                          f"{deg_t_cap}")
    cand = _build(h, bi)
    comp = cand.iterate(e)
    for j in range(D, -1, -1):
        if comp[j] != g[j]:
            want = to_text(g[j], "t") if bi else str(g[j])
            got = to_text(comp[j], "t") if bi else str(comp[j])
            return None, (f"coefficient of z^{j}: g has {want} but the solved "
                          f"h = {to_text(cand, 'z')} gives {got}")
    return cand, None
