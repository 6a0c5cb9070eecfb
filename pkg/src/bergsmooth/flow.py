"""Flow of the transverse field, boundary hitting times, the collar chart,
and anti-differentiation along the backward flow.

The transverse field on every model domain is radial, so the chart carries
closed-form hitting times and flow radii; the public flow and hitting-time
operations use fixed-step RK4 and bisection, with the closed forms serving
as cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, FlowEscapeError, NotInCollarError, ParameterError
from .functions import smoothstep, smoothstep_prime
from .geometry import Domain, VectorField, canonical_fields, collar_rate

__all__ = [
    "CollarChart",
    "build_chart",
    "flow",
    "hitting_time",
    "antiderivative",
    "trajectories",
    "antideriv_chain",
    "flow_moment_apply",
]

DEFAULT_M_STEPS = 64
DEFAULT_Q_PANELS = 32
_GAUSS_PER_PANEL = 4


def flow(field: VectorField, t: float, x, n_steps: int = DEFAULT_M_STEPS,
         escape_bound: float | None = 1.0, clamp_radius: float | None = None):
    """Flow map of a real field by fixed-step RK4.

    n_steps is the step count per unit time.  If the defining function along
    the trajectory exceeds escape_bound the curve has left the controlled
    chart and a FlowEscapeError is raised; pass None to disable (the
    hitting-time bisection probes past the boundary on purpose, with
    clamp_radius freezing curves once they are unambiguously outside).
    """
    x = np.asarray(x, dtype=complex)
    if t == 0.0:
        return x.copy()
    n = max(1, int(math.ceil(abs(t) * n_steps)))
    h = t / n
    state = x.copy()
    vel = field.velocity
    for _ in range(n):
        k1 = vel(state)
        k2 = vel(state + 0.5 * h * k1)
        k3 = vel(state + 0.5 * h * k2)
        k4 = vel(state + h * k3)
        state = state + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if clamp_radius is not None:
            r = field.domain.radius(state)
            far = r > clamp_radius
            if np.any(far):
                scale = np.where(far, clamp_radius / np.maximum(r, 1e-300), 1.0)
                state = state * (scale[..., None] if field.domain.kind == "ball2" else scale)
        if escape_bound is not None:
            if np.any(field.domain.defining_function(state) > escape_bound):
                raise FlowEscapeError("integral curve left the chart")
    return state


@dataclass(frozen=True)
class CollarChart:
    """Collar coordinates near the boundary: hitting time, cutoff, flow data.

    The chart is built on the rescaled outward transverse field, so the
    hitting time is positive inside, zero on the boundary, and the collar
    {hit time < 1} sits inside the neighborhood {hit time < 2} where the
    field is controlled.
    """

    domain: Domain
    field: VectorField
    rate: float

    # --- hitting time, closed form per model domain -----------------------

    def hit_time(self, points):
        return self.hit_time_radial(self.domain.radius(points))

    def hit_time_radial(self, r):
        r = np.asarray(r, dtype=float)
        if self.domain.kind in ("disk", "ball2"):
            with np.errstate(divide="ignore"):
                return np.where(r > 0, -np.log(np.maximum(r, 1e-300)) / self.rate, np.inf)
        rho = self.domain.rho
        a = 1.0 + rho**2
        u = r**2
        out = np.full(np.shape(u), np.inf)
        outer = u > a / 2
        inner = u < a / 2
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(
                outer,
                np.log((2.0 - a) * u / np.maximum(2.0 * u - a, 1e-300)) / (2 * a * self.rate),
                out)
            out = np.where(
                inner,
                np.log((a - 2 * rho**2) * u
                       / np.maximum((a - 2.0 * u) * rho**2, 1e-300)) / (2 * a * self.rate),
                out)
        return out

    def in_collar(self, points):
        t = self.hit_time(points)
        return np.isfinite(t) & (t < 1.0)

    def in_neighborhood(self, points):
        t = self.hit_time(points)
        return np.isfinite(t) & (t < 2.0)

    # --- cutoff -----------------------------------------------------------

    def cutoff(self, points):
        """Smooth cutoff, identically 1 for hit time <= 1/4 and 0 for >= 3/4."""
        t = self.hit_time(points)
        return smoothstep((0.75 - np.where(np.isfinite(t), t, 10.0)) / 0.5)

    def cutoff_of_time(self, t):
        return smoothstep((0.75 - t) / 0.5)

    def cutoff_time_derivative(self, points):
        """d(cutoff)/dt at the points' hit times."""
        t = self.hit_time(points)
        return -2.0 * smoothstep_prime((0.75 - np.where(np.isfinite(t), t, 10.0)) / 0.5)

    # --- radial flow closed forms ------------------------------------------

    def speed(self, r):
        """Radial speed dr/dt of the transverse flow at radius r."""
        if self.domain.kind in ("disk", "ball2"):
            return self.rate * r
        a = 1.0 + self.domain.rho**2
        return self.rate * r * (2.0 * r**2 - a)

    def speed_over_r(self, r):
        if self.domain.kind in ("disk", "ball2"):
            return self.rate * np.ones_like(np.asarray(r, dtype=float))
        a = 1.0 + self.domain.rho**2
        return self.rate * (2.0 * r**2 - a)

    def flow_radius(self, s, r):
        """Radius after flowing time s from radius r (exact)."""
        r = np.asarray(r, dtype=float)
        if self.domain.kind in ("disk", "ball2"):
            return r * np.exp(self.rate * s)
        rho = self.domain.rho
        a = 1.0 + rho**2
        u = r**2
        y_shift = 2.0 * a * self.rate * s
        outer = u > a / 2
        with np.errstate(divide="ignore", invalid="ignore"):
            y_out = np.log((2.0 - a) * u / np.maximum(2.0 * u - a, 1e-300)) - y_shift
            r_out = np.sqrt(a * np.exp(y_out) / (2.0 * np.exp(y_out) - (2.0 - a)))
            y_in = (np.log((a - 2 * rho**2) * u
                           / np.maximum((a - 2.0 * u) * rho**2, 1e-300)) - y_shift)
            e_in = np.exp(y_in)
            r_in = np.sqrt(a * e_in * rho**2 / ((a - 2 * rho**2) + 2 * rho**2 * e_in))
        return np.where(outer, r_out, r_in)

    def exact_trajectories(self, points, s_values):
        """Positions along the backward flow at the given times, closed form."""
        points = np.asarray(points, dtype=complex)
        r = self.domain.radius(points)
        safe = np.maximum(r, 1e-300)
        s = np.asarray(s_values, dtype=float)
        shape = (len(s),) + points.shape
        radii = self.flow_radius(s.reshape((-1,) + (1,) * r.ndim), r)
        if self.domain.kind == "ball2":
            return (radii[..., None] / safe[..., None]) * points
        return (radii / safe) * points


def build_chart(domain: Domain, fields=None) -> CollarChart:
    if fields is None:
        fields = canonical_fields(domain)
    return CollarChart(domain, fields["N"], collar_rate(domain))


# ---------------------------------------------------------------------------
# hitting time by bisection (closed form is the oracle, not the implementation)
# ---------------------------------------------------------------------------


def hitting_time(chart: CollarChart, x, n_steps: int = DEFAULT_M_STEPS,
                 tol: float = 1e-10, max_time: float = 2.0):
    """Boundary hitting time by bisection on the defining function along the flow."""
    x = np.asarray(x, dtype=complex)
    scalar = (x.ndim == 0) or (chart.domain.kind == "ball2" and x.ndim == 1)
    pts = x[None, ...] if scalar else x
    rho0 = chart.domain.defining_function(pts)
    if np.any(rho0 > 1e-12):
        raise ContractError("hitting time needs points in the closed domain")
    hi_val = chart.domain.defining_function(
        flow(chart.field, max_time, pts, n_steps, escape_bound=None, clamp_radius=4.0))
    if np.any(hi_val < 0):
        raise NotInCollarError("no boundary crossing within the time window")
    lo = np.zeros(pts.shape[:-1] if chart.domain.kind == "ball2" else pts.shape)
    hi = np.full_like(lo, max_time)
    while np.max(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        val = _defining_at_times(chart, mid, pts, n_steps)
        below = val < 0
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    t = 0.5 * (lo + hi)
    return float(t[0]) if scalar else t


def _defining_at_times(chart, times, pts, n_steps):
    """Defining function of per-point flows, batched over distinct times."""
    out = np.empty_like(times)
    for tv in np.unique(times):
        sel = times == tv
        moved = flow(chart.field, float(tv), pts[sel], n_steps,
                     escape_bound=None, clamp_radius=4.0)
        out[sel] = chart.domain.defining_function(moved)
    return out


# ---------------------------------------------------------------------------
# trajectory quadrature and anti-differentiation
# ---------------------------------------------------------------------------


def trajectories(chart: CollarChart, points, s_values, n_steps: int = DEFAULT_M_STEPS):
    """RK4 positions along the backward flow at each (sorted descending) time."""
    points = np.asarray(points, dtype=complex)
    s = np.asarray(s_values, dtype=float)
    order = np.argsort(-s)
    out = np.empty((len(s),) + points.shape, dtype=complex)
    state = points
    prev = 0.0
    vel = chart.field.velocity
    for idx in order:
        target = s[idx]
        span = target - prev
        if span != 0.0:
            n = max(1, int(math.ceil(abs(span) * n_steps)))
            h = span / n
            for _ in range(n):
                k1 = vel(state)
                k2 = vel(state + 0.5 * h * k1)
                k3 = vel(state + 0.5 * h * k2)
                k4 = vel(state + h * k3)
                state = state + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        out[idx] = state
        prev = target
    return out


def _panel_nodes(a: float, b: float, n_panels: int):
    """Composite Gauss nodes and weights on [a, b]."""
    gx, gw = np.polynomial.legendre.leggauss(_GAUSS_PER_PANEL)
    edges = np.linspace(a, b, n_panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1] - edges[0])
    nodes = (mid[:, None] + half * gx[None, :]).ravel()
    weights = np.tile(half * gw, n_panels)
    return nodes, weights


def _chain_kernel(depth: int, u):
    """Kernel of the depth-fold plain anti-differentiation, supported on [-depth, 0].

    This is the length/area of {s in [-1,0]^depth : sum s_i = u}: the
    B-spline of order depth.
    """
    v = -np.asarray(u, dtype=float)
    if depth == 1:
        return np.ones_like(v)
    if depth == 2:
        return 1.0 - np.abs(v - 1.0)
    if depth == 3:
        out = np.zeros_like(v)
        m1 = v <= 1.0
        m2 = (v > 1.0) & (v <= 2.0)
        m3 = v > 2.0
        out[m1] = 0.5 * v[m1] ** 2
        out[m2] = 0.5 * (-2.0 * v[m2] ** 2 + 6.0 * v[m2] - 3.0)
        out[m3] = 0.5 * (3.0 - v[m3]) ** 2
        return out
    raise ParameterError("chain depth up to 3 is supported")


def antideriv_chain(chart: CollarChart, w, points, depth: int = 1,
                    q_panels: int = DEFAULT_Q_PANELS, m_steps: int = DEFAULT_M_STEPS,
                    use_exact_flow: bool = False):
    """depth-fold anti-differentiation of a collar-supported function.

    By the flow group property the iterated backward-trajectory integrals
    collapse to a single integral against a B-spline kernel; this is exact
    whenever w vanishes off the collar, which the cutoff guarantees.
    Returns values at points, zero outside the collar.
    """
    points = np.asarray(points, dtype=complex)
    values = np.zeros(points.shape if chart.domain.kind != "ball2"
                      else points.shape[:-1], dtype=complex)
    t = chart.hit_time(points)
    live = np.isfinite(t) & (t < 1.0)
    if not np.any(live):
        return values
    pts_live = points[live] if chart.domain.kind != "ball2" else points[live, :]
    total = np.zeros(pts_live.shape if chart.domain.kind != "ball2"
                     else pts_live.shape[:-1], dtype=complex)
    for j in range(depth):
        s_nodes, s_weights = _panel_nodes(-(j + 1.0), -float(j), q_panels)
        kern = _chain_kernel(depth, s_nodes)
        if use_exact_flow:
            pos = chart.exact_trajectories(pts_live, s_nodes)
        else:
            pos = trajectories(chart, pts_live, s_nodes, m_steps)
        wv = np.asarray(w(pos), dtype=complex)
        total = total + np.tensordot(s_weights * kern, wv, axes=(0, 0))
    values[live] = total
    return values


def antiderivative(g, chart: CollarChart, points, mask="cutoff",
                   q_panels: int = DEFAULT_Q_PANELS, m_steps: int = DEFAULT_M_STEPS):
    """Integral of g along the backward unit-time flow, zero outside the collar.

    g must vanish off the closed collar; this is enforced by pre-multiplying
    with a support mask: "cutoff" (the chart cutoff), "neighborhood" (a smooth
    cutoff at the edge of the controlled neighborhood), or None when the
    caller guarantees the support.  Returns values at the given points.
    """
    masked = _masked(g, chart, mask)
    return antideriv_chain(chart, masked, points, depth=1,
                           q_panels=q_panels, m_steps=m_steps)


def _masked(g, chart, mask):
    if mask is None:
        return g
    if mask == "cutoff":
        return lambda p: chart.cutoff(p) * np.asarray(g(p))
    if mask == "neighborhood":
        def nb(p):
            t = chart.hit_time(p)
            m = smoothstep((1.9 - np.where(np.isfinite(t), t, 10.0)) / 0.4)
            return m * np.asarray(g(p))
        return nb
    raise ParameterError(f"unknown support mask {mask!r}")


def flow_moment_apply(chart: CollarChart, mu: int, g, points,
                      q_panels: int = DEFAULT_Q_PANELS, m_steps: int = DEFAULT_M_STEPS):
    """The Hardy majorant: integral of (hit time at the flow point)^mu * |g o flow|.

    The hitting time along the trajectory is the base hitting time minus the
    flow time, which the group property gives exactly.
    """
    points = np.asarray(points, dtype=complex)
    out = np.zeros(points.shape if chart.domain.kind != "ball2"
                   else points.shape[:-1], dtype=float)
    t = chart.hit_time(points)
    live = np.isfinite(t) & (t < 1.0)
    if not np.any(live):
        return out
    pts_live = points[live] if chart.domain.kind != "ball2" else points[live, :]
    s_nodes, s_weights = _panel_nodes(-1.0, 0.0, q_panels)
    pos = trajectories(chart, pts_live, s_nodes, m_steps)
    gv = np.abs(np.asarray(g(pos)))
    tt = t[live][None, :] - s_nodes[:, None]
    out[live] = np.tensordot(s_weights, tt**mu * gv, axes=(0, 0)).real
    return out
