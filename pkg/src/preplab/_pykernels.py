"""Pure-Python / numpy implementations of the hot kernels.

These mirror ``_ckernels.pyx`` operation for operation so that both
backends produce the same floating-point results.
"""

import numpy as np

BACKEND = "python"


def int_convolve(a, b):
    """Schoolbook product of two integer coefficient lists."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def escape_rows(acoef, bcoef, c, re_min, re_step, im_min, im_step,
                width, row_start, row_stop, n_max, radius, out):
    """Fill ``out[row_start:row_stop]`` with escape counts.

    The polynomial at parameter t has coefficients ``acoef*t + bcoef``
    (lowest degree first). A count of ``n`` means the n-th iterate is the
    first to leave the disc; ``n_max + 1`` means it never left. A
    non-positive radius selects the per-cell bound 1 + sum |coeff_i|.
    """
    acoef = np.asarray(acoef, dtype=np.complex128)
    bcoef = np.asarray(bcoef, dtype=np.complex128)
    deg = len(acoef) - 1
    rows = np.arange(row_start, row_stop, dtype=np.float64)
    cols = np.arange(width, dtype=np.float64)
    tre = re_min + cols[None, :] * re_step + 0.0 * rows[:, None]
    tim = im_min + rows[:, None] * im_step + 0.0 * cols[None, :]
    # coefficient k at every cell: a_k*t + b_k, formed from real parts
    cre = []
    cim = []
    for k in range(deg + 1):
        ar, ai = acoef[k].real, acoef[k].imag
        cre.append(ar * tre - ai * tim + bcoef[k].real)
        cim.append(ar * tim + ai * tre + bcoef[k].imag)
    if radius > 0:
        r2 = np.full(tre.shape, radius * radius)
    else:
        bound = np.ones(tre.shape)
        for k in range(deg):
            bound = bound + np.sqrt(cre[k] * cre[k] + cim[k] * cim[k])
        r2 = bound * bound
    zr = np.full(tre.shape, float(np.real(c)))
    zi = np.full(tre.shape, float(np.imag(c)))
    counts = np.full(tre.shape, n_max + 1, dtype=np.int32)
    alive = np.ones(tre.shape, dtype=bool)
    with np.errstate(over="ignore", invalid="ignore"):
        _iterate_cells(cre, cim, deg, zr, zi, r2, counts, alive, n_max)
    out[row_start:row_stop, :] = counts


def _iterate_cells(cre, cim, deg, zr, zi, r2, counts, alive, n_max):
    for n in range(1, n_max + 1):
        hr = cre[deg].copy()
        hi = cim[deg].copy()
        for k in range(deg - 1, -1, -1):
            tr = hr * zr - hi * zi + cre[k]
            hi = hr * zi + hi * zr + cim[k]
            hr = tr
        zr = np.where(alive, hr, zr)
        zi = np.where(alive, hi, zi)
        esc = alive & (zr * zr + zi * zi > r2)
        counts[esc] = n
        alive &= ~esc
        if not alive.any():
            break


def aberth(coeffs, z0, max_iter):
    """Simultaneous Aberth-Ehrlich iteration (Jacobi sweep).

    ``coeffs`` is highest degree first. Returns ``(roots, converged,
    iterations)``. A root is frozen once its correction is at rounding
    level or its residual is below the Horner rounding-error bound.
    """
    a = np.asarray(coeffs, dtype=np.complex128)
    n = len(a) - 1
    z = np.array(z0, dtype=np.complex128)
    absa = np.abs(a)
    eps = np.finfo(np.float64).eps
    converged = np.zeros(n, dtype=bool)
    it = 0
    while it < max_iter and not converged.all():
        it += 1
        p = np.full(n, a[0])
        dp = np.zeros(n, dtype=np.complex128)
        err = np.full(n, absa[0])
        az = np.abs(z)
        for k in range(1, n + 1):
            dp = dp * z + p
            p = p * z + a[k]
            err = err * az + absa[k]
        small = np.abs(p) <= 4.0 * eps * err
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        active = ~converged & ~small
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            delta = ratio / (1.0 - ratio * s)
        bad = active & ~np.isfinite(delta)
        delta[bad] = eps * (1.0 + az[bad])
        znew = np.where(active, z - delta, z)
        tiny = np.abs(delta) <= 2.0 * eps * np.abs(znew)
        converged |= small | (active & tiny)
        z = znew
    return z, converged, it
