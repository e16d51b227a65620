"""Exact checks of the expansion bounds and the final obstruction on rational data.

All inputs are rational.  Base points ``c_1..c_{m-1}`` fix a line through
:func:`~preplab.lines.build_line`; ``c_m`` and ``c_{m+1}`` are probes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import NEG_INF, deg_t, to_rational, tpoly
from .errors import InvalidInputError, NotApplicableError
from .family import DEFAULT_DEG_CAP, Family, orbit, specialize_line
from .lines import (StartingPoints, SigmaMap, _as_sigma, _base_points, build_line,
                    lagrange_B, vanishing_poly)


def _jsonable_deg(k):
    return None if k is NEG_INF else k


@dataclass(frozen=True)
class ExpansionReport:
    n: int
    lhs_deg: object
    bound: int
    passed: bool

    def __bool__(self):
        return self.passed

    def to_json(self):
        return {"n": self.n, "lhs_deg": _jsonable_deg(self.lhs_deg),
                "bound": self.bound, "pass": self.passed}


def line_map(c, sigma, d):
    """``(family, line, g)`` for base points ``c`` and ``sigma``."""
    sigma = _as_sigma(sigma, c)
    m = len(sigma) + 1
    fam = Family(d, m)
    line = build_line(c, sigma, d)
    return fam, line, specialize_line(fam, line)


def _orbit_tail(c, sigma, d, probe, n, deg_cap):
    if n < 2:
        raise InvalidInputError(f"need n >= 2, got {n}")
    fam, line, g = line_map(c, sigma, d)
    rec = orbit(g, to_rational(probe), n, deg_cap)
    return fam, line, rec.values[n], rec.values[n - 1]


def check_expansion_bound(c, sigma, d: int, probe, n: int,
                          deg_cap: int = DEFAULT_DEG_CAP) -> ExpansionReport:
    """``deg_t(g^n(p) - g^{n-1}(p)^d) <= d^{n-2} (m-1) + 1``."""
    fam, _, vn, v = _orbit_tail(c, sigma, d, probe, n, deg_cap)
    k = deg_t(vn - v ** d)
    bound = d ** (n - 2) * (fam.m - 1) + 1
    return ExpansionReport(n, k, bound, k <= bound)


def check_refined_expansion(c, sigma, d: int, probe, n: int,
                            deg_cap: int = DEFAULT_DEG_CAP) -> ExpansionReport:
    """Same with the ``t_1`` and ``t_2`` terms removed; bound ``d^{n-2} (m-3) + 1``."""
    fam, line, vn, v = _orbit_tail(c, sigma, d, probe, n, deg_cap)
    m = fam.m
    if m < 3:
        raise InvalidInputError(f"need m >= 3, got m={m}")
    t2 = tpoly([line.beta[0], line.alpha[0]])
    t1 = tpoly([0, 1])
    rest = vn - v ** d - t1 * v ** (m - 1) - t2 * v ** (m - 2)
    k = deg_t(rest)
    bound = d ** (n - 2) * (m - 3) + 1
    return ExpansionReport(n, k, bound, k <= bound)


def top_coefficients(c, sigma, d: int, probe):
    """Coefficients of ``t^d`` and ``t^{d-1}`` in ``g^2(p)`` and their predicted values.

    The prediction is ``A(p)^d`` and ``d A(p)^{d-1} B(p)``, plus ``A(p)^{d-2}``
    when ``m = d - 1``.  Returns ``(observed, predicted)`` pairs.
    """
    fam, _, g = line_map(c, sigma, d)
    p = to_rational(probe)
    v2 = orbit(g, p, 2).values[2]
    A = vanishing_poly(_base_points(c, fam.m - 1))
    B = lagrange_B(c, sigma, d)
    a, b = A(p), B(p)
    lead = a ** d
    second = d * a ** (d - 1) * b + (a ** (d - 2) if fam.m == d - 1 else 0)
    return (v2[d], lead), (v2[d - 1], second)


def _points(c):
    return c if isinstance(c, StartingPoints) else StartingPoints(c)


def xi_ratio(c) -> Fraction:
    """``A(c_{m+1}) / A(c_m)`` with ``A`` vanishing on ``c_1..c_{m-1}``."""
    pts = _points(c)
    A = vanishing_poly(pts)
    den = A(pts.cm)
    if not den:
        raise InvalidInputError(f"c_m = {pts.cm} is a root of A")
    return A(pts.cm1) / den


def rational_root_of_unity(x, d: int) -> bool:
    """Whether ``x^d = 1``; over Q only ``1`` and, for even d, ``-1``."""
    return x == 1 or (x == -1 and d % 2 == 0)


@dataclass(frozen=True)
class ObstructionReport:
    xi: Fraction
    value: Fraction
    closed_form_value: Fraction
    a_cm: Fraction
    a_cm1: Fraction
    a_prime_c1: Fraction
    xi_unit: bool

    def to_json(self):
        out = {k: str(getattr(self, k)) for k in
               ("xi", "value", "closed_form_value", "a_cm", "a_cm1", "a_prime_c1")}
        out["xi_is_rational_root_of_unity"] = self.xi_unit
        return out


def obstruction_report(c, d: int) -> ObstructionReport:
    """``D = [B_2 - B_1](c_{m+1}) - xi [B_2 - B_1](c_m)`` next to its closed form.

    ``B_1`` uses the identity map and ``B_2`` sends 1 to 2 and fixes the
    rest.  Needs ``m >= 3`` so that a second base point exists.
    """
    pts = _points(c)
    m = pts.m
    if m < 3:
        raise InvalidInputError(f"need m >= 3 for two base points, got m={m}")
    if d <= m:
        raise InvalidInputError(f"need d > m, got d={d}, m={m}")
    A = vanishing_poly(pts)
    a_cm, a_cm1 = A(pts.cm), A(pts.cm1)
    if not a_cm:
        raise InvalidInputError(f"c_m = {pts.cm} is a root of A")
    if not a_cm1:
        raise InvalidInputError(f"c_(m+1) = {pts.cm1} is a root of A")
    xi = a_cm1 / a_cm
    s1 = SigmaMap.identity(m - 1)
    s2 = SigmaMap((2,) + s1.image[1:])
    diff = lagrange_B(pts, s2, d) - lagrange_B(pts, s1, d)
    value = diff(pts.cm1) - xi * diff(pts.cm)
    c1, c2, cm, cm1 = pts[1], pts[2], pts.cm, pts.cm1
    dA1 = A.derivative()(c1)
    closed = (c2 - c1) * a_cm1 / dA1 * (cm - cm1) / ((cm1 - c1) * (cm - c1))
    return ObstructionReport(xi, value, closed, a_cm, a_cm1, dA1,
                             rational_root_of_unity(xi, d))


def sigma_difference(c, d: int) -> Fraction:
    """The value ``D`` of :func:`obstruction_report`, asserted equal to the closed form."""
    rep = obstruction_report(c, d)
    if rep.value != rep.closed_form_value:
        raise AssertionError(f"D = {rep.value} but closed form gives {rep.closed_form_value}")
    return rep.value


@dataclass(frozen=True)
class BranchReport:
    """Outcome of :func:`check_md1_branch`.

    ``status`` is ``"hypothesis fails"``, ``"verified"`` or, when xi is not
    a root of unity and the short form makes no claim, ``"verified (general form)"``.
    ``rearrangement_exact`` records that the hypothesis expression equals
    ``d A^{d-1} xi^{d-1}`` times the general residual; it is checked on every call.
    """

    status: str
    xi: Fraction
    hypothesis_value: Fraction
    rearrangement_exact: bool
    conclusion_lhs: Fraction | None = None
    conclusion_rhs: Fraction | None = None

    def __bool__(self):
        return self.rearrangement_exact and (
            self.conclusion_lhs is None or self.conclusion_lhs == self.conclusion_rhs)

    def to_json(self):
        opt = lambda x: None if x is None else str(x)
        return {"status": self.status, "xi": str(self.xi),
                "hypothesis_value": str(self.hypothesis_value),
                "rearrangement_exact": self.rearrangement_exact,
                "conclusion_lhs": opt(self.conclusion_lhs),
                "conclusion_rhs": opt(self.conclusion_rhs), "pass": bool(self)}


def check_md1_branch(c, d: int, sigma=None) -> BranchReport:
    """The case ``m = d - 1``.

    With ``a = A(c_m)``, ``xi = A(c_{m+1})/a`` and ``b_1, b_2 = B(c_m), B(c_{m+1})``
    the hypothesis reads ``H = d a^{d-1} b_1 - d (xi a)^{d-1} b_2 + a^{d-2}
    - (xi a)^{d-2} = 0``.  Dividing by ``d a^{d-1} xi^{d-1}`` gives
    ``b_2 - xi^{1-d} b_1 = (1 - xi^{d-2}) / (d a xi^{d-1})``, which for
    ``xi^d = 1`` is ``b_2 - xi b_1 = (xi - 1/xi) / (d a)``.
    """
    pts = _points(c)
    m = pts.m
    if m != d - 1:
        raise NotApplicableError(f"needs m = d - 1, got m={m}, d={d}")
    sigma = _as_sigma(sigma, pts)
    A = vanishing_poly(pts)
    B = lagrange_B(pts, sigma, d)
    a = A(pts.cm)
    if not a:
        raise InvalidInputError(f"c_m = {pts.cm} is a root of A")
    a1 = A(pts.cm1)
    xi = a1 / a
    if not xi:
        raise InvalidInputError(f"c_(m+1) = {pts.cm1} is a root of A, so xi = 0")
    b1, b2 = B(pts.cm), B(pts.cm1)
    H = d * a ** (d - 1) * b1 - d * a1 ** (d - 1) * b2 + a ** (d - 2) - a1 ** (d - 2)
    general = b2 - xi ** (1 - d) * b1 - (1 - xi ** (d - 2)) / (d * a * xi ** (d - 1))
    exact = H == -d * a ** (d - 1) * xi ** (d - 1) * general
    if H:
        return BranchReport("hypothesis fails", xi, H, exact)
    if rational_root_of_unity(xi, d):
        return BranchReport("verified", xi, H, exact, b2 - xi * b1, (xi - 1 / xi) / (d * a))
    return BranchReport("verified (general form)", xi, H, exact,
                        b2 - xi ** (1 - d) * b1, (1 - xi ** (d - 2)) / (d * a * xi ** (d - 1)))


__all__ = [
    "ExpansionReport", "check_expansion_bound", "check_refined_expansion",
    "top_coefficients", "xi_ratio", "ObstructionReport", "obstruction_report",
    "sigma_difference", "BranchReport", "check_md1_branch", "line_map",
    "rational_root_of_unity",
]
