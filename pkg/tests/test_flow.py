import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bergsmooth.errors import NotInCollarError
from bergsmooth.flow import (
    antideriv_chain,
    antiderivative,
    build_chart,
    flow,
    flow_moment_apply,
    hitting_time,
    trajectories,
)
from bergsmooth.functions import Poly2
from bergsmooth.geometry import boundary_samples, polar_eval_grid


@pytest.fixture(scope="module")
def disk_chart(disk):
    return build_chart(disk)


@pytest.fixture(scope="module")
def annulus_chart(annulus):
    return build_chart(annulus)


@pytest.fixture(scope="module")
def ball_chart(ball2):
    return build_chart(ball2)


def masked_ng(chart, w):
    """Analytic application of the transverse field to cutoff * w."""
    def ng(p):
        r = chart.domain.radius(p)
        wx = w.partial((1, 0), p)
        wy = w.partial((0, 1), p)
        radial = chart.speed_over_r(r) * (p.real * wx + p.imag * wy)
        return -chart.cutoff_time_derivative(p) * w(p) + chart.cutoff(p) * radial
    return ng


def test_flow_identity_at_zero(disk_chart):
    x = np.array([0.5 + 0.2j, -0.1 + 0.7j])
    np.testing.assert_array_equal(flow(disk_chart.field, 0.0, x), x)


def test_flow_matches_exponential(disk_chart):
    # radial field at rate c: modulus scales by e^{c t}
    c = disk_chart.rate
    z = 0.5 + 0.0j
    for t in (-0.7, -0.2, 0.3):
        out = flow(disk_chart.field, t, np.array([z]), n_steps=64)[0]
        assert abs(out - z * np.exp(c * t)) < 1e-10


@settings(max_examples=25, deadline=None)
@given(st.floats(-0.5, 0.5), st.floats(-0.5, 0.3), st.floats(0.55, 0.9),
       st.floats(0, 2 * np.pi))
def test_flow_group_property(s, t, r, th):
    chart = build_chart(__import__("bergsmooth.geometry", fromlist=["make_domain"])
                        .make_domain("disk"))
    x = np.array([r * np.exp(1j * th)])
    one = flow(chart.field, s, flow(chart.field, t, x, 64), 64)
    two = flow(chart.field, s + t, x, 64)
    assert abs(one[0] - two[0]) < 1e-9


def test_exact_trajectories_match_rk4(disk_chart, annulus_chart):
    for chart, pts in ((disk_chart, np.array([0.6 + 0.1j, 0.2 + 0.85j])),
                       (annulus_chart, np.array([0.9 + 0.05j, 0.55 + 0.1j]))):
        s = np.linspace(-1.0, 0.0, 9)
        rk = trajectories(chart, pts, s, n_steps=64)
        exact = chart.exact_trajectories(pts, s)
        assert np.max(np.abs(rk - exact)) < 1e-9


def test_hitting_time_boundary(disk_chart):
    p = boundary_samples(disk_chart.domain, 8)
    t = hitting_time(disk_chart, p)
    assert np.max(np.abs(t)) < 1e-8


def test_hitting_time_closed_form_oracle(disk_chart):
    c = disk_chart.rate
    z = np.exp(-0.3 * c) + 0.0j
    assert hitting_time(disk_chart, z) == pytest.approx(0.3, abs=1e-8)
    assert disk_chart.hit_time(np.array([z]))[0] == pytest.approx(0.3, rel=1e-12)


def test_hitting_time_annulus_both_bands(annulus_chart):
    pts = np.array([0.95 + 0.0j, 0.55j])
    t = hitting_time(annulus_chart, pts)
    np.testing.assert_allclose(t, annulus_chart.hit_time(pts), atol=1e-8)


def test_hitting_time_not_in_collar(annulus_chart):
    # near the stall circle the flow cannot reach either boundary in time 2
    with pytest.raises(NotInCollarError):
        hitting_time(annulus_chart, np.array([0.7905 + 0.0j]))


def test_hit_time_boundary_distance_ratio(disk_chart, annulus_chart, ball_chart):
    # frozen from a fine ratio study per domain
    kappa = {"disk": 2.0, "annulus": 7.0, "ball2": 2.6}
    from bergsmooth.geometry import boundary_distance
    for chart in (disk_chart, annulus_chart, ball_chart):
        if chart.domain.kind == "ball2":
            base = boundary_samples(chart.domain, 64)
            pts = np.concatenate([s * base for s in (0.999, 0.95, 0.9, 0.8, 0.7)])
        else:
            th = np.linspace(0, 2 * np.pi, 16, endpoint=False)
            radii = []
            for rr in np.linspace(0.01, 0.99, 60):
                cand = rr * np.exp(1j * th) if chart.domain.kind == "disk" else \
                    (chart.domain.rho + rr * (1 - chart.domain.rho)) * np.exp(1j * th)
                radii.append(cand)
            pts = np.concatenate(radii)
        t = chart.hit_time(pts)
        live = np.isfinite(t) & (t < 1.0) & (t > 1e-12)
        d = boundary_distance(chart.domain, pts[live])
        ratio = t[live] / d
        assert np.max(ratio) <= kappa[chart.domain.kind]
        assert np.min(ratio) >= 0.5


def test_cutoff_profile(disk_chart):
    r = np.exp(-disk_chart.rate * np.array([0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.5]))
    z = r.astype(complex)
    zeta = disk_chart.cutoff(z)
    assert zeta[0] == 1.0 and zeta[1] == 1.0 and zeta[2] == 1.0
    assert 0 < zeta[3] < 1
    assert zeta[4] == 0.0 and zeta[5] == 0.0 and zeta[6] == 0.0


def test_cutoff_derivatives_bounded(disk_chart):
    # all t-derivatives of the cutoff up to order 4 stay bounded on the band
    t = np.linspace(0.26, 0.74, 400)
    vals = disk_chart.cutoff_of_time(t)
    h = t[1] - t[0]
    cur = vals
    for order in range(1, 5):
        cur = np.gradient(cur, h)
        assert np.all(np.isfinite(cur))
        assert np.max(np.abs(cur)) < 1e5


def test_antiderivative_zero(disk_chart):
    pts = np.array([0.9 + 0.0j, 0.6 + 0.3j])
    out = antiderivative(lambda p: np.zeros_like(p), disk_chart, pts)
    assert np.all(out == 0)


def test_ftc_identity_tracked_product(disk_chart):
    # the transverse field applied to the tracked pair (cutoff profile, h)
    # feeds the reproduction identity directly
    from bergsmooth.decompose import cutoff_times
    from bergsmooth.functions import Holo1
    zh = cutoff_times(disk_chart, Holo1.from_coeffs([0.4, 1.0, 0.2j]))
    ng = zh.radial_field_applied(disk_chart.speed, disk_chart.speed_over_r)
    r = np.exp(-disk_chart.rate * np.linspace(0.02, 1.3, 12))
    pts = (r[:, None] * np.exp(1j * np.linspace(0, 2 * np.pi, 8, endpoint=False))).ravel()
    back = antideriv_chain(disk_chart, ng, pts, depth=1)
    assert np.max(np.abs(back - zh(pts))) < 1e-6


def test_ftc_identity(disk_chart, annulus_chart, rng):
    # g = cutoff * smooth reproduces itself through the transverse field:
    # sup |g - antideriv(N g)| small at M=64, Q=32
    for chart in (disk_chart, annulus_chart):
        grid = polar_eval_grid(chart.domain, 24, 48,
                               r_inner=0.3 if chart.domain.kind == "disk" else None)
        pts = grid.nodes().ravel()
        for _ in range(3):
            w = Poly2.random(rng, degree=3)
            g = chart.cutoff(pts) * w(pts)
            ag = antideriv_chain(chart, masked_ng(chart, w), pts, depth=1,
                                 q_panels=32, m_steps=64)
            assert np.max(np.abs(g - ag)) < 1e-6


def test_antiderivative_radial_closed_form(disk_chart):
    # plain |z| masked to the controlled neighborhood: on points whose whole
    # trajectory stays where the mask is 1, the integral is |z|(1-e^{-c})/c
    c = disk_chart.rate
    pts = np.exp(-c * np.array([0.05, 0.2, 0.4])).astype(complex)
    out = antiderivative(lambda p: np.abs(p).astype(complex), disk_chart, pts,
                         mask="neighborhood")
    expect = np.abs(pts) * (1 - np.exp(-c)) / c
    np.testing.assert_allclose(out, expect, atol=1e-9)


def test_chain_collapse_matches_nesting(disk_chart, rng):
    w = Poly2.random(rng, degree=2)
    masked = lambda p: disk_chart.cutoff(p) * w(p)
    pts = np.exp(-disk_chart.rate * np.linspace(0.02, 0.9, 7)).astype(complex)
    inner = lambda p: antideriv_chain(disk_chart, masked, p, depth=1)
    nested = antideriv_chain(disk_chart, inner, pts, depth=1)
    collapsed = antideriv_chain(disk_chart, masked, pts, depth=2)
    np.testing.assert_allclose(nested, collapsed, atol=1e-8)


def test_flow_moment_dominates_plain(disk_chart, rng):
    # with mu = 0 and g >= 0 the majorant equals the plain anti-derivative
    w = Poly2.random(rng, degree=2)
    nonneg = lambda p: np.abs(w(p)) * disk_chart.cutoff(p)
    pts = np.exp(-disk_chart.rate * np.linspace(0.02, 0.9, 9)).astype(complex)
    b0 = flow_moment_apply(disk_chart, 0, nonneg, pts)
    a0 = antideriv_chain(disk_chart, nonneg, pts, depth=1)
    np.testing.assert_allclose(b0, a0.real, atol=1e-12)


def test_support_mask_dependence(disk_chart, rng):
    # values off the cutoff support cannot influence the masked integral
    w = Poly2.random(rng, degree=2)
    bump_inside = lambda p: np.where(np.abs(p) < 0.4, 7.0, 0.0)
    pts = np.exp(-disk_chart.rate * np.linspace(0.02, 0.9, 9)).astype(complex)
    a = antiderivative(w, disk_chart, pts)
    b = antiderivative(lambda p: w(p) + bump_inside(p), disk_chart, pts)
    np.testing.assert_allclose(a, b, atol=1e-13)
