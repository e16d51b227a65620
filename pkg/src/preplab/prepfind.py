"""Numeric search for preperiodic parameters on one-parameter slices.

Hits found here are numerical evidence, not certificates; rational-looking
hits can be confirmed exactly with :func:`confirm_exact`.
"""

from __future__ import annotations

import json
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import kernels
from .arith import NEG_INF, BiPoly, DensePoly, Ring
from .errors import ContractError, ConvergenceError, InvalidInputError
from .family import DEFAULT_DEG_CAP, Family, is_preperiodic_exact, orbit, specialize_line
from .lines import Line, decompose_AB

DEFAULT_ROOT_TOL = 1e-10
DEFAULT_MERGE_RADIUS = 1e-8
DEFAULT_MAX_ITER = 500
MAX_GRID_CELLS = 4096 * 4096
SCHEMA = "preplab/1"


class PersistentlyPreperiodicWarning(UserWarning):
    """A gap polynomial vanishes identically: every parameter is a hit."""


@dataclass(frozen=True)
class PrepHit:
    t: complex
    n: int
    k: int
    residual: float

    def to_json(self):
        return {"t": [self.t.real, self.t.imag], "n": self.n, "k": self.k,
                "residual": self.residual, "status": "numeric"}


def orbit_gap_poly(g: BiPoly, c, n: int, k: int, deg_cap: int = DEFAULT_DEG_CAP):
    """``g_t^n(c) - g_t^k(c)``; its roots are parameters where c is (n, k)-preperiodic."""
    if not n > k >= 0:
        raise InvalidInputError(f"need n > k >= 0, got n={n}, k={k}")
    rec = orbit(g, c, n, deg_cap)
    return rec.values[n] - rec.values[k]


def cauchy_radius(coeffs_high_first):
    """Positive root of ``|a_n| x^n = sum_{i<n} |a_i| x^i``; bounds every root."""
    mags = [abs(complex(a)) for a in coeffs_high_first]
    lead, rest = mags[0], mags[1:]
    if not any(rest):
        return 0.0

    def f(x):
        acc = lead
        for m in rest:
            acc = acc * x - m
        return acc

    lo, hi = 0.0, 1.0 + max(rest) / lead
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-12 * hi:
            break
    return hi


def initial_guesses(coeffs_high_first):
    n = len(coeffs_high_first) - 1
    r = cauchy_radius(coeffs_high_first) or 1.0
    k = np.arange(n)
    return r * np.exp(1j * (2 * np.pi * k / n + 0.4))


def _scale(coeffs):
    return max(abs(c) for c in coeffs)


def _horner(coeffs_high_first, x):
    acc = 0j
    for a in coeffs_high_first:
        acc = acc * x + a
    return acc


def _backward_error(q, z):
    return np.max(np.abs(q[0] * np.poly(z) - q))


def _clusters(q, z):
    """Groups of approximations whose inclusion discs ``n |p/p'|`` overlap."""
    n = len(z)
    rad = n * np.abs(np.polyval(q, z) / np.polyval(np.polyder(q), z))
    rad[~np.isfinite(rad)] = np.inf
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i
    close = np.abs(z[:, None] - z[None, :]) <= rad[:, None] + rad[None, :]
    for i, j in zip(*np.nonzero(np.triu(close, 1))):
        parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [g for g in groups.values() if len(g) > 1]


def _polish_clusters(q, z, conv):
    """Swap in companion-matrix eigenvalues when they reconstruct ``p`` better.

    Aberth freezes the members of a multiple-root cluster independently
    inside the rounding noise, so their product can drift far from ``p``
    even though each residual is at rounding level.  Only tried when the
    inclusion discs overlap.
    """
    if not conv.all() or not _clusters(q, z):
        return z
    alt = np.roots(q)
    if len(alt) == len(z) and _backward_error(q, alt) < _backward_error(q, z):
        return alt
    return z


def roots(p, tol: float = DEFAULT_ROOT_TOL, max_iter: int = DEFAULT_MAX_ITER):
    """All complex roots of ``p`` with multiplicity.

    Uses simultaneous Aberth-Ehrlich iteration without deflation; exact zero
    roots are split off first; clustered results are cross-checked against
    companion-matrix eigenvalues.  Every returned root ``r`` satisfies
    ``|p(r)| <= tol * max_i |p_i|``, otherwise :class:`ConvergenceError` is
    raised with the current approximations.
    """
    if isinstance(p, BiPoly):
        raise ContractError("roots needs a univariate polynomial")
    if p.ring is Ring.Q:
        p = p.to_complex()
    deg = p.degree
    if deg is NEG_INF or deg < 1:
        raise InvalidInputError("roots needs degree >= 1")
    scale = _scale(p.coeffs)
    if abs(p.lead) <= tol * scale:
        raise InvalidInputError("leading coefficient is below the tolerance")
    low = 0
    while p.coeffs[low] == 0:
        low += 1
    q = list(reversed(p.coeffs[low:]))
    found = [0j] * low
    if len(q) == 2:
        z = np.array([-q[1] / q[0]])
        conv = np.array([True])
    elif len(q) > 2:
        z, conv, _ = kernels.aberth(q, initial_guesses(q), max_iter)
        z = _polish_clusters(np.asarray(q, dtype=np.complex128), np.asarray(z), conv)
    else:
        return found
    full = list(reversed(p.coeffs))
    stuck = [low + i for i, ok in enumerate(conv) if not ok]
    loose = [low + i for i, (r, ok) in enumerate(zip(z, conv))
             if ok and abs(_horner(full, r)) > tol * scale]
    result = found + [complex(r) for r in z]
    if stuck or loose:
        raise ConvergenceError(
            f"{len(stuck)} root(s) unconverged after {max_iter} sweeps, "
            f"{len(loose)} converged root(s) above the residual bound",
            result, sorted(stuck + loose))
    return result


def _rescaled_complex(p: DensePoly) -> DensePoly:
    """Float image of an exact polynomial, divided by its largest coefficient."""
    big = max(abs(c) for c in p.coeffs)
    return DensePoly._from_normalized([complex(c / big) for c in p.coeffs], Ring.C)


def find_prep_params(g: BiPoly, c, N: int, tol: float = DEFAULT_ROOT_TOL,
                     merge_radius: float = DEFAULT_MERGE_RADIUS, min_tail: int = 1,
                     deg_cap: int = DEFAULT_DEG_CAP):
    """Parameters ``t`` with ``g_t^n(c) = g_t^k(c)`` for ``min_tail <= k < n <= N``.

    Pairs are scanned in lexicographic ``(n, k)`` order and each root is
    kept only if no earlier hit lies within ``merge_radius``, so every hit
    carries its first witnessing pair.  Each gap polynomial is reduced to
    its exact squarefree part over Q before numeric root finding.

    With the default ``min_tail=1`` the search covers strictly preperiodic
    relations with ``n <= N`` together with every periodic relation of
    length ``< N`` (``g^n(c) = c`` implies ``g^{n+1}(c) = g(c)``).
    ``min_tail=0`` adds the periodic relations of length exactly ``N``.
    """
    if N < 1:
        raise InvalidInputError("N must be >= 1")
    rec = orbit(g, c, N, deg_cap)
    hits = []
    for n in range(1, N + 1):
        for k in range(min_tail, n):
            gap = rec.values[n] - rec.values[k]
            if not gap:
                warnings.warn(f"g^{n}(c) = g^{k}(c) identically in t",
                              PersistentlyPreperiodicWarning, stacklevel=2)
                continue
            if gap.degree < 1:
                continue
            sq = gap.squarefree_part()
            sqc = _rescaled_complex(sq)
            scale = _scale(sqc.coeffs)
            high = list(reversed(sqc.coeffs))
            for r in roots(sqc, tol):
                if any(abs(r - h.t) <= merge_radius for h in hits):
                    continue
                hits.append(PrepHit(r, n, k, abs(_horner(high, r)) / scale))
    return hits


def confirm_exact(hit: PrepHit, g: BiPoly, c, max_den: int = 1000, atol: float = 1e-9):
    """Exact verdict at the nearby small rational, or None if ``hit.t`` is not one."""
    if abs(hit.t.imag) > atol:
        return None
    q = Fraction(hit.t.real).limit_denominator(max_den)
    if abs(float(q) - hit.t.real) > atol:
        return None
    return q, is_preperiodic_exact(g.at_t(q), Fraction(c))


# -- escape-time grids ------------------------------------------------------

@dataclass
class EscapeGrid:
    """Escape counts; ``cells[i, j]`` is the sample ``t = re_j + i*im_i``.

    Row 0 is ``im_min`` and column 0 is ``re_min``; a value of
    ``n_max + 1`` means the orbit never left the disc.
    """

    region: tuple
    resolution: tuple
    n_max: int
    radius: float | None
    cells: np.ndarray
    c: complex = 0j

    @property
    def steps(self):
        re_min, re_max, im_min, im_max = self.region
        w, h = self.resolution
        return (re_max - re_min) / w, (im_max - im_min) / h

    def sample(self, row, col):
        re_step, im_step = self.steps
        return complex(self.region[0] + col * re_step, self.region[2] + row * im_step)

    def cell_of(self, t):
        """Grid indices ``(row, col)`` whose sample point is exactly ``t``, else None."""
        t = complex(t)
        re_step, im_step = self.steps
        col = round((t.real - self.region[0]) / re_step)
        row = round((t.imag - self.region[2]) / im_step)
        w, h = self.resolution
        if 0 <= row < h and 0 <= col < w and self.sample(row, col) == t:
            return row, col
        return None

    def metadata(self):
        return {"schema": SCHEMA, "region": list(self.region),
                "resolution": list(self.resolution), "n_max": self.n_max,
                "radius": self.radius, "c": [self.c.real, self.c.imag],
                "never_escaped": self.n_max + 1,
                "pgm_orientation": "first image row is im_max"}


def escape_grid(fam: Family, line: Line, c, region, resolution, n_max: int = 50,
                radius: float | None = None, workers: int = 1,
                max_cells: int = MAX_GRID_CELLS) -> EscapeGrid:
    """Escape-time counts of ``c`` under ``g_t`` over a rectangle of parameters.

    Sample points are ``re_min + j*(re_max-re_min)/w`` (and likewise for the
    imaginary part), so power-of-two spans hit dyadic parameters exactly.
    ``radius=None`` uses the per-cell bound ``1 + sum_{i<d} |coeff_i|``.
    Cells are independent; ``workers`` only changes how rows are split.
    """
    w, h = (int(x) for x in resolution)
    if w < 1 or h < 1 or w * h > max_cells:
        raise InvalidInputError(f"resolution {w}x{h} outside 1..{max_cells} cells")
    re_min, re_max, im_min, im_max = (float(x) for x in region)
    A, B = decompose_AB(specialize_line(fam, line))
    size = fam.d + 1
    acoef = np.array([complex(A[i]) for i in range(size)])
    bcoef = np.array([complex(B[i]) for i in range(size)])
    cells = np.empty((h, w), dtype=np.int32)
    re_step = (re_max - re_min) / w
    im_step = (im_max - im_min) / h
    rad = -1.0 if radius is None else float(radius)
    cz = complex(c)

    def run(span):
        kernels.escape_rows(acoef, bcoef, cz, re_min, re_step, im_min, im_step,
                            w, span[0], span[1], n_max, rad, cells)

    workers = max(1, int(workers))
    chunk = max(1, math.ceil(h / (workers * 4)))
    spans = [(r, min(r + chunk, h)) for r in range(0, h, chunk)]
    if workers == 1:
        for span in spans:
            run(span)
    else:
        with ThreadPoolExecutor(workers) as pool:
            list(pool.map(run, spans))
    return EscapeGrid((re_min, re_max, im_min, im_max), (w, h), n_max, radius, cells, cz)


def write_pgm(grid: EscapeGrid, path):
    """Binary PGM (P5) plus a ``.json`` sidecar; returns the sidecar path."""
    path = Path(path)
    top = grid.n_max + 1
    img = (grid.cells.astype(np.int64) * 255 // top).astype(np.uint8)[::-1]
    h, w = img.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(np.ascontiguousarray(img).tobytes())
    side = path.with_suffix(".json")
    side.write_text(json.dumps(grid.metadata(), indent=2))
    return side


def read_pgm(path):
    data = Path(path).read_bytes()
    parts = data.split(b"\n", 3)
    if parts[0] != b"P5":
        raise InvalidInputError("not a binary PGM")
    w, h = (int(x) for x in parts[1].split())
    return np.frombuffer(parts[3], dtype=np.uint8).reshape(h, w)
