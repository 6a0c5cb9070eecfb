import numpy as np
import pytest

from bergsmooth.bergman import (
    build_basis,
    coefficients_to_csv_rows,
    gram_matrix,
    kernel_eval,
    project,
    synthesize,
)
from bergsmooth.errors import ContractError, ParameterError


@pytest.fixture(scope="module")
def disk_basis(disk):
    return build_basis(disk, 32)


@pytest.fixture(scope="module")
def annulus_basis(annulus):
    return build_basis(annulus, 32)


@pytest.fixture(scope="module")
def ball_basis(ball2):
    return build_basis(ball2, 66)  # total degree <= 10


def test_disk_unit_norm(disk_basis, disk_grid):
    e0 = disk_basis.elements[0]
    val = disk_grid.integrate(np.abs(e0.eval(disk_grid.nodes)) ** 2)
    assert val == pytest.approx(1.0, abs=1e-10)


def test_disk_orthogonality(disk_basis, disk_grid):
    e1 = disk_basis.elements[1].eval(disk_grid.nodes)
    e3 = disk_basis.elements[3].eval(disk_grid.nodes)
    assert abs(disk_grid.inner(e1, e3)) < 1e-10


def test_annulus_log_norm(annulus_basis, annulus_grid):
    # the z^-1 element: 2 pi integral of r^-1 over (1/2, 1) equals 2 pi ln 2
    elems = {e.power: e for e in annulus_basis.elements}
    assert elems[-1].norm**2 == pytest.approx(2 * np.pi * np.log(2), rel=1e-14)
    raw = annulus_grid.nodes ** (-1)
    quad = annulus_grid.integrate(np.abs(raw) ** 2)
    assert quad == pytest.approx(2 * np.pi * np.log(2), abs=1e-8)


def test_gram_identity(disk_basis, disk_grid, annulus_basis, annulus_grid,
                       ball_basis, ball2_grid):
    for basis, grid in ((disk_basis, disk_grid), (annulus_basis, annulus_grid),
                        (ball_basis, ball2_grid)):
        G = gram_matrix(basis, grid)
        assert np.max(np.abs(G - np.eye(basis.size))) < 1e-8


def test_project_constant(disk_basis, disk_grid):
    c = project(lambda z: np.ones_like(z), disk_basis, disk_grid)
    assert c.coeffs[0] == pytest.approx(np.sqrt(np.pi), abs=1e-10)
    assert np.max(np.abs(c.coeffs[1:])) < 1e-10


def test_project_antiholomorphic_is_zero(disk_basis, disk_grid):
    c = project(lambda z: np.conj(z), disk_basis, disk_grid)
    assert np.max(np.abs(c.coeffs)) < 1e-10


def test_project_abs_square(disk_basis, disk_grid):
    # (|z|^2, 1)/||1||^2 = (pi/2)/pi, so the projection is the constant 1/2
    c = project(lambda z: np.abs(z) ** 2, disk_basis, disk_grid)
    at = synthesize(c, np.array([0.5 + 0.0j, -0.2 + 0.1j]))
    assert np.allclose(at, 0.5, atol=1e-10)


def test_project_domain_mismatch(disk_basis, annulus_grid):
    with pytest.raises(ContractError):
        project(lambda z: z, disk_basis, annulus_grid)


def test_kernel_disk_origin(disk):
    # series oracle at the origin: sum (k+1)/pi 0^k = 1/pi
    assert kernel_eval(disk, 0j, 0j) == pytest.approx(1 / np.pi, rel=1e-14)


def test_kernel_reproducing(disk, disk_basis, disk_grid):
    z0 = 0.3 + 0.0j
    kv = kernel_eval(disk, disk_grid.nodes, z0)
    e2 = disk_basis.elements[2]
    # brute-force quadrature of K(., z0) against e_2 reproduces e_2(z0)
    val = disk_grid.inner(e2.eval(disk_grid.nodes), kv)
    assert val == pytest.approx(e2.eval(np.array(z0)), abs=1e-8)


def test_kernel_ball_origin(ball2):
    z = np.zeros(2, dtype=complex)
    assert kernel_eval(ball2, z, z) == pytest.approx(2 / np.pi**2, rel=1e-14)


def test_kernel_near_singular_guard(disk):
    with pytest.raises(ParameterError):
        kernel_eval(disk, 0.999999999999999 + 0j, 0.999999999999999 + 0j)


def test_kernel_annulus_matches_quadrature(annulus, annulus_basis, annulus_grid):
    # reproducing check: quadrature of K(., w) against a basis element
    w = 0.7 + 0.1j
    kv = kernel_eval(annulus, annulus_grid.nodes, w, tol=1e-12)
    e = annulus_basis.elements[10]
    val = annulus_grid.inner(e.eval(annulus_grid.nodes), kv)
    assert val == pytest.approx(e.eval(np.array(w)), abs=1e-7)


def test_synthesize_examples(disk_basis):
    from bergsmooth.bergman import CoefficientVector
    coeffs = np.zeros(32, dtype=complex)
    coeffs[0] = 1.0
    cv = CoefficientVector(disk_basis, coeffs)
    assert synthesize(cv, np.array(0j)) == pytest.approx(np.sqrt(1 / np.pi))
    zero = CoefficientVector(disk_basis, np.zeros(32, dtype=complex))
    assert np.all(synthesize(zero, np.array([0.1 + 0.2j, 0.5j])) == 0)


def test_idempotence(disk_basis, disk_grid, rng):
    f = lambda z: np.abs(z) ** 2 + 0.3 * np.conj(z) + z**2
    c1 = project(f, disk_basis, disk_grid)
    resampled = synthesize(c1, disk_grid.nodes)
    c2 = project(resampled, disk_basis, disk_grid)
    assert np.max(np.abs(c1.coeffs - c2.coeffs)) < 1e-9


def test_self_adjointness(disk_basis, disk_grid, rng):
    # (Bf, g) = (f, Bg) for random band-limited f, g
    def random_fn():
        cz = rng.normal(size=5) + 1j * rng.normal(size=5)
        czb = rng.normal(size=4) + 1j * rng.normal(size=4)
        return lambda z: (np.polynomial.polynomial.polyval(z, cz)
                          + np.polynomial.polynomial.polyval(np.conj(z), czb))
    for _ in range(5):
        f, g = random_fn(), random_fn()
        fv, gv = f(disk_grid.nodes), g(disk_grid.nodes)
        bf = synthesize(project(fv, disk_basis, disk_grid), disk_grid.nodes)
        bg = synthesize(project(gv, disk_basis, disk_grid), disk_grid.nodes)
        lhs = disk_grid.inner(bf, gv)
        rhs = disk_grid.inner(fv, bg)
        assert lhs == pytest.approx(rhs, abs=1e-8)


def test_conjugate_holomorphic_orthogonality(disk_basis, disk_grid, rng):
    a = rng.normal(size=9) + 1j * rng.normal(size=9)
    f = lambda z: np.polynomial.polynomial.polyval(z, a)
    c = project(lambda z: np.conj(f(z)), disk_basis, disk_grid)
    assert c.coeffs[0] == pytest.approx(np.conj(a[0]) * np.sqrt(np.pi), abs=1e-9)
    assert np.max(np.abs(c.coeffs[1:])) < 1e-9


def test_kernel_series_consistency(disk, rng):
    # truncated bilinear series converges monotonically to the closed form
    for _ in range(10):
        z = 0.7 * rng.uniform(0, 1) * np.exp(2j * np.pi * rng.uniform())
        w = 0.7 * rng.uniform(0, 1) * np.exp(2j * np.pi * rng.uniform())
        exact = kernel_eval(disk, z, w)
        errs = []
        for nb in (8, 16, 32):
            basis = build_basis(disk, nb)
            series = sum(e.eval(np.array(z)) * np.conj(e.eval(np.array(w)))
                         for e in basis.elements)
            errs.append(abs(series - exact))
        floor = 1e-14 * abs(exact)  # rounding floor once the tail is subnormal
        assert errs[1] <= max(errs[0], floor)
        assert errs[2] <= max(errs[1], floor)


def test_coefficient_csv(disk_basis):
    from bergsmooth.bergman import CoefficientVector
    cv = CoefficientVector(disk_basis, np.arange(32, dtype=complex))
    header, rows = coefficients_to_csv_rows(cv)
    assert header == ["index", "re", "im"]
    assert rows[3] == [3, 3.0, 0.0]
