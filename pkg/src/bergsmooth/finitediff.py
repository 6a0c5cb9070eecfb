"""Fourth-order finite-difference stencils, on callables and on polar grids."""

from __future__ import annotations

import numpy as np

from .errors import ResolutionError

# default step for stencils applied to smooth callables
FD_STEP = 2e-3

_C1 = np.array([1.0, -8.0, 8.0, -1.0]) / 12.0
_O1 = np.array([-2.0, -1.0, 1.0, 2.0])


def partial_callable(f, z, beta, h=FD_STEP):
    """D^beta f at planar points z, beta = (order in x, order in y).

    Central 5-point first-derivative stencils, applied recursively for higher
    and mixed orders; each level is 4th-order accurate.
    """
    bx, by = beta
    if bx == 0 and by == 0:
        return f(z)
    if bx > 0:
        return sum(c * partial_callable(f, z + o * h, (bx - 1, by), h)
                   for c, o in zip(_C1, _O1)) / h
    return sum(c * partial_callable(f, z + 1j * o * h, (bx, by - 1), h)
               for c, o in zip(_C1, _O1)) / h


def dz_callable(f, z, h=FD_STEP):
    fx = partial_callable(f, z, (1, 0), h)
    fy = partial_callable(f, z, (0, 1), h)
    return 0.5 * (fx - 1j * fy), 0.5 * (fx + 1j * fy)


def diff_uniform(samples, dx, axis, periodic=False):
    """4th-order first derivative of gridded samples along one uniform axis."""
    samples = np.asarray(samples)
    n = samples.shape[axis]
    if n < 7:
        raise ResolutionError("need at least 7 points along a differencing axis")
    s = np.moveaxis(samples, axis, 0)
    if periodic:
        out = (np.roll(s, 2, axis=0) - 8.0 * np.roll(s, 1, axis=0)
               + 8.0 * np.roll(s, -1, axis=0) - np.roll(s, -2, axis=0)) / (12.0 * dx)
    else:
        out = np.empty_like(s)
        out[2:-2] = (s[:-4] - 8.0 * s[1:-3] + 8.0 * s[3:-1] - s[4:]) / (12.0 * dx)
        # one-sided 4th-order stencils at the edges
        fwd = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0
        for i in (0, 1):
            out[i] = sum(c * s[i + j] for j, c in enumerate(fwd)) / dx
            out[-1 - i] = -sum(c * s[-1 - i - j] for j, c in enumerate(fwd)) / dx
    return np.moveaxis(out, 0, axis)


def polar_cartesian_partial(samples, grid, beta):
    """D^beta in cartesian coordinates of samples on a PolarEvalGrid.

    Differencing happens along the grid axes; the chain rule supplies the
    cartesian partials.  Applied recursively for higher orders.
    """
    bx, by = beta
    if bx == 0 and by == 0:
        return np.asarray(samples, dtype=complex)
    R = grid.r[:, None]
    TH = grid.theta[None, :]
    if bx > 0:
        inner = polar_cartesian_partial(samples, grid, (bx - 1, by))
        fr = diff_uniform(inner, grid.dr, axis=0)
        ft = diff_uniform(inner, grid.dtheta, axis=1, periodic=True)
        return np.cos(TH) * fr - np.sin(TH) / R * ft
    inner = polar_cartesian_partial(samples, grid, (bx, by - 1))
    fr = diff_uniform(inner, grid.dr, axis=0)
    ft = diff_uniform(inner, grid.dtheta, axis=1, periodic=True)
    return np.sin(TH) * fr + np.cos(TH) / R * ft
