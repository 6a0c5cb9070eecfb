"""Sobolev norms, directional Sobolev norms, boundary-distance weighted norms,
sup-weighted norms, and the duality functional over a truncated basis ball.

The boundary-distance weighted norm ||d^k h|| stands in for the norm of
order -k throughout: for holomorphic h the two are comparable on the model
domains, and every check downstream is a ratio, so unknown comparability
constants drop out or are reported empirically.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .bergman import CoefficientVector, OrthonormalBasis, gram_matrix, project, synthesize
from .errors import ConditioningError, ContractError, ParameterError, ResolutionError
from .finitediff import polar_cartesian_partial
from .functions import AngularFamily, Holo1, apply_field
from .geometry import (
    Domain,
    PolarEvalGrid,
    QuadratureGrid,
    boundary_distance,
    polar_eval_grid,
    quadrature_grid,
)

__all__ = [
    "NormReport",
    "sobolev_norm",
    "directional_sobolev_norm",
    "weighted_negative_norm",
    "sup_weighted_norm",
    "duality_sup",
    "rotation_multiplier",
]

MAX_ORDER = 3


@dataclass(frozen=True)
class NormReport:
    value: float
    kind: str
    parameters: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if not (np.isfinite(self.value) and self.value >= 0):
            if not self.parameters.get("divergent", False):
                raise ContractError("norm must be finite and nonnegative unless flagged")


@functools.lru_cache(maxsize=8)
def _default_grid(domain: Domain) -> QuadratureGrid:
    if domain.kind == "ball2":
        return quadrature_grid(domain, 12, 24)
    return quadrature_grid(domain, 32, 64)


def _multi_indices(k: int):
    return [(bx, by) for total in range(k + 1) for bx in range(total + 1)
            for by in (total - bx,)]


def sobolev_norm(f, k: int, domain: Domain, grid: QuadratureGrid | None = None,
                 eval_grid: PolarEvalGrid | None = None, mode: str | None = None) -> float:
    """Sobolev norm of order k: cartesian partials up to order k in L^2.

    Holomorphic data (coefficient vectors, tracked holomorphic functions) is
    differentiated analytically and integrated on the quadrature grid; other
    samplable functions are finite-differenced on an inset polar evaluation
    grid.
    """
    if k > MAX_ORDER:
        raise ParameterError(f"orders up to {MAX_ORDER} are supported")
    if grid is None:
        grid = _default_grid(domain)
    if mode is None:
        analytic = isinstance(f, (CoefficientVector, Holo1))
    else:
        analytic = mode == "analytic"
    if analytic:
        return _sobolev_analytic(f, k, domain, grid)
    if domain.kind == "ball2":
        raise ContractError("finite-difference norms are planar only")
    if eval_grid is None:
        eval_grid = polar_eval_grid(domain, 64, 128)
    if eval_grid.r.size < 7:
        raise ResolutionError("evaluation grid too coarse for the stencil")
    if isinstance(f, np.ndarray):
        samples = f
        if samples.shape != eval_grid.shape:
            raise ContractError("sample array does not match the evaluation grid")
    else:
        samples = np.asarray(f(eval_grid.nodes()), dtype=complex)
    total = 0.0
    for beta in _multi_indices(k):
        d = polar_cartesian_partial(samples, eval_grid, beta)
        total += eval_grid.norm(d) ** 2
    return float(np.sqrt(total))


def _sobolev_analytic(f, k, domain, grid):
    total = 0.0
    if domain.kind == "ball2":
        if not isinstance(f, CoefficientVector):
            raise ContractError("analytic norms on the ball take coefficient vectors")
        for m1 in range(k + 1):
            for m2 in range(k + 1 - m1):
                vals = synthesize(f, grid.nodes, deriv=(m1, m2))
                total += (m1 + 1) * (m2 + 1) * grid.norm(vals) ** 2
        return float(np.sqrt(total))
    for j in range(k + 1):
        if isinstance(f, CoefficientVector):
            vals = synthesize(f, grid.nodes, deriv=j)
        else:
            vals = f.partial((j, 0), grid.nodes)
        # the j-th complex derivative feeds all j+1 cartesian multi-indices
        total += (j + 1) * grid.norm(vals) ** 2
    return float(np.sqrt(total))


def rotation_multiplier(domain: Domain):
    """Radial factor q(r) in the canonical rotation field q(r) d/dtheta."""
    if domain.kind == "annulus":
        a = 1.0 + domain.rho**2
        return lambda r: 2.0 * r**2 - a
    return lambda r: np.ones_like(np.asarray(r, dtype=float))


def directional_sobolev_norm(f, fld, k: int, grid: QuadratureGrid | None = None,
                             eval_grid: PolarEvalGrid | None = None) -> float:
    """Norm built from powers of a single tangential field.

    Separated angular sums with the canonical rotation field go through the
    exact diagonal action; anything else uses repeated directional finite
    differences on an inset evaluation grid.
    """
    domain = fld.domain
    if grid is None:
        grid = _default_grid(domain)
    if isinstance(f, AngularFamily) and fld.name in ("T0", "T1"):
        q = rotation_multiplier(domain)
        total = 0.0
        cur = f
        for j in range(k + 1):
            vals = cur(grid.nodes)
            total += grid.norm(vals) ** 2
            cur = cur.rotation_applied(q)
        return float(np.sqrt(total))
    if domain.kind == "ball2":
        raise ContractError("directional finite differences are planar only")
    if eval_grid is None:
        # inset must clear the widest stencil excursion (2 steps of the
        # first-derivative stencil per differentiation level)
        eval_grid = polar_eval_grid(domain, 96, 128, delta=(2 * k + 1) * 2.5e-3)
    pts = eval_grid.nodes().ravel()

    def power(j, points):
        if j == 0:
            return np.asarray(f(points), dtype=complex)
        return apply_field(fld, lambda p: power(j - 1, p), points)

    w = eval_grid.weights().ravel()
    total = 0.0
    for j in range(k + 1):
        total += float(np.sum(w * np.abs(power(j, pts)) ** 2))
    return float(np.sqrt(total))


def weighted_negative_norm(h, k: int, domain: Domain,
                           grid: QuadratureGrid | None = None) -> float:
    """L^2 norm of (boundary distance)^k times h, the order -k stand-in."""
    if grid is None:
        grid = _default_grid(domain)
    vals = _values(h, grid)
    d = boundary_distance(domain, grid.nodes)
    return float(np.sqrt(np.sum(grid.weights * d ** (2 * k) * np.abs(vals) ** 2)))


def _values(h, grid):
    if isinstance(h, CoefficientVector):
        return synthesize(h, grid.nodes)
    return np.asarray(h(grid.nodes), dtype=complex)


def _sup_grid_nodes(domain: Domain, n_r: int, n_th: int, delta: float):
    if domain.kind == "ball2":
        from .geometry import boundary_samples
        sphere = boundary_samples(domain, 4 * n_th)
        r = np.linspace(0.0, 1.0 - delta, n_r)
        return (r[:, None, None] * sphere[None, :, :]).reshape(-1, 2)
    r = np.linspace(0.0, 1.0 - delta, n_r) if domain.kind == "disk" else \
        np.linspace(domain.rho + delta, 1.0 - delta, n_r)
    th = np.linspace(0.0, 2 * np.pi, n_th, endpoint=False)
    return (r[:, None] * np.exp(1j * th)[None, :]).ravel()


def sup_weighted_norm(h, m: int, domain: Domain, n_r: int = 200, n_th: int = 128,
                      delta: float = 1e-3) -> float:
    """Max over a dense evaluation grid of |h| times d^(m + 2n)."""
    pts = _sup_grid_nodes(domain, n_r, n_th, delta)
    if isinstance(h, CoefficientVector):
        vals = synthesize(h, pts)
    else:
        vals = np.asarray(h(pts), dtype=complex)
    power = m + 2 * domain.complex_dimension
    d = boundary_distance(domain, pts)
    return float(np.max(np.abs(vals) * d**power))


def duality_sup(f, k1: int, basis: OrthonormalBasis, grid: QuadratureGrid) -> float:
    """sup |(f, h)| over the truncated basis ball { ||d^{k1} h|| <= 1 }.

    Exact in the truncated space: with v the projection coefficients of f and
    G the distance-weighted Gram matrix, the value is sqrt(v* G^{-1} v),
    via a symmetric positive-definite factorization.
    """
    v = project(f, basis, grid).coeffs if not isinstance(f, CoefficientVector) else f.coeffs
    if k1 == 0:
        return float(np.linalg.norm(v))
    d = boundary_distance(basis.domain, grid.nodes)
    G = gram_matrix(basis, grid, weight=d ** (2 * k1))
    G = 0.5 * (G + np.conj(G.T))
    try:
        L = np.linalg.cholesky(G)
    except np.linalg.LinAlgError as exc:
        raise ConditioningError(
            f"weighted Gram matrix not positive definite at truncation {basis.size}",
            truncation=basis.size) from exc
    y = np.linalg.solve(L, v)
    return float(np.linalg.norm(y))
