"""Preperiodicity lines and the ``A(z)*t + B(z)`` decomposition.

A line is parametrised by ``t_1 = t`` and ``t_i = alpha_i*t + beta_i`` for
``i = 2..m``.  Given base points ``c_1..c_{m-1}`` and a self-map ``sigma`` of
their indices, :func:`build_line` returns the unique line along which
``f(c_i) = c_{sigma(i)}`` holds identically in ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import BiPoly, DensePoly, to_rational, tpoly
from .errors import InvalidInputError, NotAffineError


@dataclass(frozen=True)
class SigmaMap:
    """Self-map of ``{1..m-1}``; ``image[i-1]`` is sigma(i). Need not be injective."""

    image: tuple

    def __init__(self, image):
        image = tuple(int(x) for x in image)
        k = len(image)
        for i, s in enumerate(image, 1):
            if not 1 <= s <= k:
                raise InvalidInputError(f"sigma({i}) = {s} is outside 1..{k}")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, k):
        return cls(range(1, k + 1))

    def __len__(self):
        return len(self.image)

    def __call__(self, i):
        return self.image[i - 1]


@dataclass(frozen=True)
class StartingPoints:
    """The points ``c_1..c_{m+1}``.

    The first ``m - 1`` define lines; ``c_m`` and ``c_{m+1}`` are the probes.
    """

    c: tuple

    def __init__(self, c):
        object.__setattr__(self, "c", tuple(to_rational(x) for x in c))
        if len(self.c) < 3:
            raise InvalidInputError("need c_1..c_{m+1} with m >= 2")
        check_distinct(self.base)

    @property
    def m(self):
        return len(self.c) - 1

    @property
    def base(self):
        return self.c[: self.m - 1]

    @property
    def cm(self):
        return self.c[self.m - 1]

    @property
    def cm1(self):
        return self.c[self.m]

    def __getitem__(self, i):
        """1-based access, ``pts[1]`` is c_1."""
        return self.c[i - 1]


@dataclass(frozen=True)
class Line:
    """``alpha = (alpha_2..alpha_m)``, ``beta = (beta_2..beta_m)``."""

    alpha: tuple
    beta: tuple

    def __init__(self, alpha, beta):
        alpha = tuple(to_rational(a) for a in alpha)
        beta = tuple(to_rational(b) for b in beta)
        if len(alpha) != len(beta):
            raise InvalidInputError("alpha and beta must have the same length")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def m(self):
        return len(self.alpha) + 1

    @classmethod
    def zero(cls, m):
        return cls([0] * (m - 1), [0] * (m - 1))

    def point(self, t):
        """Parameter tuple ``(t_1..t_m)`` at ``t``."""
        return (t,) + tuple(a * t + b for a, b in zip(self.alpha, self.beta))

    def to_json(self):
        return {"alpha": [str(a) for a in self.alpha], "beta": [str(b) for b in self.beta]}


def check_distinct(points):
    points = list(points)
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if points[i] == points[j]:
                raise InvalidInputError(
                    f"starting points c_{i + 1} and c_{j + 1} coincide ({points[i]})")


def _base_points(c, k=None):
    if isinstance(c, StartingPoints):
        pts = c.base
    else:
        pts = tuple(to_rational(x) for x in c)
    return pts if k is None else pts[:k]


def _as_sigma(sigma, c):
    if sigma is None:
        return SigmaMap.identity(len(_base_points(c)))
    return sigma if isinstance(sigma, SigmaMap) else SigmaMap(sigma)


def solve_linear(matrix, rhs):
    """Exact Gaussian elimination; ``rhs`` may hold several columns.

    Raises :class:`InvalidInputError` on a singular matrix.
    """
    n = len(matrix)
    rows = [list(map(Fraction, matrix[i])) + list(map(Fraction, rhs[i])) for i in range(n)]
    width = len(rows[0]) if rows else 0
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            raise InvalidInputError("singular linear system")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return [row[n:width] for row in rows]


def build_line(c, sigma, d) -> Line:
    """Line ``L_sigma`` on which ``g_t(c_i) = c_{sigma(i)}`` for all t.

    ``c`` supplies ``c_1..c_{m-1}`` (any further entries are ignored) and
    ``m = len(sigma) + 1``.  Writing the unknowns ``t_2..t_m`` against the
    powers ``c_i^{m-2}..c_i^0`` gives a Vandermonde system whose right-hand
    side is affine in ``t``; both columns are solved at once.
    """
    sigma = _as_sigma(sigma, c)
    k = len(sigma)
    pts = _base_points(c, k)
    if len(pts) < k:
        raise InvalidInputError(f"need {k} base points for a sigma of length {k}")
    check_distinct(pts)
    m = k + 1
    if d <= m:
        raise InvalidInputError(f"need d > m, got d={d}, m={m}")
    if k == 0:
        return Line((), ())
    matrix = [[x ** (m - j) for j in range(2, m + 1)] for x in pts]
    rhs = [[-(x ** (m - 1)), pts[sigma(i + 1) - 1] - x ** d] for i, x in enumerate(pts)]
    sol = solve_linear(matrix, rhs)
    return Line([row[0] for row in sol], [row[1] for row in sol])


def vanishing_poly(c) -> DensePoly:
    """``A(z) = prod (z - c_i)`` over the given points (base points for StartingPoints)."""
    return DensePoly.from_roots(_base_points(c))


def lagrange_B(c, sigma, d) -> DensePoly:
    """Closed form ``B_sigma(z) = z^d + sum (c_sigma(i) - c_i^d) A(z)/((z-c_i) A'(c_i))``."""
    sigma = _as_sigma(sigma, c)
    pts = _base_points(c, len(sigma))
    if len(pts) < len(sigma):
        raise InvalidInputError(f"need {len(sigma)} base points")
    check_distinct(pts)
    A = DensePoly.from_roots(pts)
    dA = A.derivative()
    B = DensePoly.monomial(d)
    for i, ci in enumerate(pts, 1):
        weight = pts[sigma(i) - 1] - ci ** d
        if not weight:
            continue
        basis, rem = A.divmod_linear(ci)
        assert not rem
        B = B + basis.scale(weight / dA(ci))
    return B


def decompose_AB(g: BiPoly):
    """Split an affine-in-t BiPoly into ``(A, B)`` with ``g = A*t + B``."""
    A, B = [], []
    for j, coeff in enumerate(g.zcoeffs):
        if len(coeff) > 2:
            raise NotAffineError(f"z^{j} coefficient has degree {coeff.degree} in t")
        B.append(coeff[0])
        A.append(coeff[1])
    return DensePoly(A), DensePoly(B)


def affine_bipoly(A: DensePoly, B: DensePoly) -> BiPoly:
    """Inverse of :func:`decompose_AB`."""
    size = max(len(A), len(B))
    return BiPoly([tpoly([B[j], A[j]]) for j in range(size)])


__all__ = [
    "SigmaMap", "StartingPoints", "Line", "build_line", "vanishing_poly",
    "lagrange_B", "decompose_AB", "affine_bipoly", "solve_linear", "check_distinct",
]
