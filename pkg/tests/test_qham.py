"""Conjugacy-class pull-backs, the moment 2-form and the kernel theorem."""

import numpy as np
import pytest

from atiyahcheck.liealg import make_group
from atiyahcheck.qham import (ConjugacyClass, GhjwSignError, TrivialClass,
                              TruncatedBasis, calibrate_ghjw, ghjw_omega,
                              gram_kernel, project_based, pullback_bracket,
                              pullback_generator, pullback_template,
                              varpi_pullback)
from atiyahcheck.sections import BumpFunction, TimeGrid, random_section


@pytest.fixture
def su2():
    return make_group("su2")


@pytest.fixture
def klass(su2):
    return ConjugacyClass(su2)


@pytest.fixture
def rng():
    return np.random.default_rng(53)


def _unit(rng):
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def test_class_equivariance(su2, klass, rng):
    for _ in range(3):
        assert klass.equivariance_residual(su2.random_group(rng), _unit(rng)) < 1e-12


def test_central_point_omega_zero(su2, klass):
    # at Ad_g = 1 (class angle -> 0 limit is central); instead check the
    # antipodal invariance: omega vanishes when Ad_g = Ad_{g^{-1}}
    pi_class = ConjugacyClass(su2, angle=np.pi)
    omega = ghjw_omega(pi_class, 1.0)
    n = np.array([0.0, 0.0, 1.0])
    t1, t2 = pi_class.tangent_basis(n)
    assert abs(omega(n, t1, t2)) < 1e-12


def test_ghjw_oracle_and_example(su2, klass, rng):
    sign, residuals = calibrate_ghjw(klass, rng)
    assert residuals[sign] < 1e-8
    omega = ghjw_omega(klass, sign)
    n0 = np.array([0.0, 0.0, 1.0])
    t1 = klass.generator_field(np.array([1.0, 0.0, 0.0]), n0)
    t2 = klass.generator_field(np.array([0.0, 1.0, 0.0]), n0)
    assert abs(abs(omega(n0, t1, t2)) - 1.0) < 1e-12


def test_pullback_template_seam(su2, klass, rng):
    bump = BumpFunction()
    a0 = su2.random_vector(rng)
    sec = pullback_template(klass, lambda m: a0 + m[0] * a0,
                            lambda m: (np.eye(3) - np.outer(m, m)) @ np.array([1.0, 0, 0]),
                            bump)
    for _ in range(3):
        assert sec.seam_residual(_unit(rng)) < 1e-10


def test_pullback_generator_bracket(su2, klass, rng):
    n = _unit(rng)
    x, y = su2.random_vector(rng), su2.random_vector(rng)
    gb = pullback_bracket(pullback_generator(klass, x), pullback_generator(klass, y))
    want = -su2.bracket(x, y)
    assert np.linalg.norm(gb.profile(n, 0.4) - want) < 1e-6
    assert gb.seam_residual(n) < 1e-6


def test_kernel_dimension_and_stability(su2, klass, rng):
    sign, _ = calibrate_ghjw(klass, rng)
    omega = ghjw_omega(klass, sign)
    n = _unit(rng)
    grid = TimeGrid(201)
    for n_max in (4, 6):
        basis = TruncatedBasis(klass, n, n_max, grid)
        assert basis.seam_residuals().max() < 1e-8
        for thr in (1e-7, 1e-8):
            dim, null, s, dropped = gram_kernel(basis, omega, threshold=thr)
            assert dim == 3
            assert dropped == 2
    # generator rows pair to zero
    basis = TruncatedBasis(klass, n, 4, grid)
    dim, null, s, _ = gram_kernel(basis, omega)
    assert np.abs(s[:3, :]).max() < 1e-5


def test_kernel_requires_nondegenerate_pairing():
    h3 = make_group("heisenberg3")
    rng = np.random.default_rng(3)

    class FakeClass(TrivialClass):
        pass

    basis = TruncatedBasis(FakeClass(h3), _unit(rng), 2, TimeGrid(51))
    with pytest.raises(ValueError):
        gram_kernel(basis, None)


def test_abelian_kernel_count(rng):
    tor = make_group("torus2")
    basis = TruncatedBasis(TrivialClass(tor), _unit(rng), 4, TimeGrid(201))
    dim, null, s, dropped = gram_kernel(basis, None)
    assert dim == tor.dim + 2
    assert dropped == 0


def test_varpi_pullback_generator_rows(su2, klass, rng):
    sign, _ = calibrate_ghjw(klass, rng)
    omega = ghjw_omega(klass, sign)
    n = _unit(rng)
    grid = TimeGrid(201)
    bump = BumpFunction()
    x = su2.random_vector(rng)
    xg = pullback_generator(klass, x)
    sec = pullback_template(klass, lambda m: su2.random_vector(np.random.default_rng(1)),
                            lambda m: (np.eye(3) - np.outer(m, m)) @ np.array([0.3, -0.7, 0.2]),
                            bump)
    val = varpi_pullback(klass, xg, sec, n, grid) \
        + omega(n, xg.xfield(n), sec.xfield(n))
    assert abs(val) < 1e-10


def test_project_based(su2, rng):
    g = su2.random_group(rng)
    xi = random_section(su2, rng)
    q = project_based(xi)
    assert np.linalg.norm(q.profile(g, 0.0)) < 1e-14
    x0 = xi.profile(g, 0.0)
    want = xi.v(g) + su2.Ad(g, x0) - x0
    assert np.linalg.norm(q.v(g) - want) < 1e-13
    # loop sections vanishing at zero are unchanged
    from atiyahcheck.sections import loop_section
    e1 = np.array([1.0, 0, 0])
    z = loop_section(su2, lambda t: np.sin(2 * np.pi * t) * e1)
    qz = project_based(z)
    ge = su2.identity()
    for t in (0.2, 0.7):
        assert np.linalg.norm(qz.profile(ge, t) - z.profile(ge, t)) < 1e-14


def test_project_based_pullback(su2, klass, rng):
    bump = BumpFunction()
    a0 = su2.random_vector(rng)
    sec = pullback_template(klass, lambda m: a0 + m[1] * a0,
                            lambda m: (np.eye(3) - np.outer(m, m)) @ np.array([0.2, 0.5, -0.1]),
                            bump)
    from atiyahcheck.qham import project_based_pullback
    q = project_based_pullback(sec)
    n = _unit(rng)
    assert np.linalg.norm(q.profile(n, 0.0)) < 1e-14
    assert q.seam_residual(n) < 1e-9
    # pull-back generators project to zero sections with shifted tangent
    x = su2.random_vector(rng)
    qg = project_based_pullback(pullback_generator(klass, x))
    assert np.linalg.norm(qg.profile(n, 0.6)) < 1e-14
    assert np.linalg.norm(qg.xfield(n)) < 1e-12
