"""Group/algebra core: catalog construction, exp/Ad, derivative oracles."""

import numpy as np
import pytest

from atiyahcheck.liealg import (GROUP_NAMES, cubic_polynomial, expm,
                                make_group, quadratic_polynomial)


@pytest.fixture(params=GROUP_NAMES)
def algebra(request):
    return make_group(request.param)


def test_catalog_names():
    assert set(GROUP_NAMES) == {"su2", "so3", "heisenberg3", "torus2"}
    with pytest.raises(ValueError):
        make_group("nope")


def test_construction_invariants(algebra):
    # construction already validates; re-check the pieces explicitly
    c = algebra.c
    assert np.max(np.abs(c + np.transpose(c, (1, 0, 2)))) < 1e-12
    jac = (np.einsum("ijm,mkl->ijkl", c, c)
           + np.einsum("jkm,mil->ijkl", c, c)
           + np.einsum("kim,mjl->ijkl", c, c))
    assert np.max(np.abs(jac)) < 1e-12


def test_nondegeneracy_flags():
    assert make_group("su2").nondegenerate
    assert make_group("so3").nondegenerate
    assert make_group("torus2").nondegenerate
    # invariance forces the Heisenberg center into the radical
    assert not make_group("heisenberg3").nondegenerate


def test_exp_identity(algebra):
    assert np.allclose(algebra.exp(np.zeros(algebra.dim)), algebra.identity())


def test_expm_against_series():
    rng = np.random.default_rng(0)
    m = 0.3 * rng.standard_normal((6, 6))
    series = np.eye(6)
    term = np.eye(6)
    for k in range(1, 30):
        term = term @ m / k
        series = series + term
    assert np.linalg.norm(expm(m) - series) < 1e-13


def test_so3_rotation_oracle():
    alg = make_group("so3")
    t = 0.7
    g = alg.exp(t * np.array([0.0, 0.0, 1.0]))
    got = alg.Ad(g, np.array([1.0, 0.0, 0.0]))
    want = np.array([np.cos(t), np.sin(t), 0.0])
    assert np.linalg.norm(got - want) < 1e-12


def test_abelian_ad_trivial():
    alg = make_group("torus2")
    rng = np.random.default_rng(1)
    g = alg.random_group(rng)
    x = alg.random_vector(rng)
    assert np.linalg.norm(alg.Ad(g, x) - x) < 1e-13


def test_bracket_antisymmetry(algebra):
    rng = np.random.default_rng(2)
    x = algebra.random_vector(rng)
    y = algebra.random_vector(rng)
    assert np.linalg.norm(algebra.bracket(x, x)) < 1e-14
    assert np.linalg.norm(algebra.bracket(x, y) + algebra.bracket(y, x)) < 1e-14


def test_so3_structure():
    alg = make_group("so3")
    e = np.eye(3)
    assert np.allclose(alg.bracket(e[0], e[1]), e[2])


def test_directional_derivative_oracles(algebra):
    rng = np.random.default_rng(3)
    g = algebra.random_group(rng)
    v = algebra.random_vector(rng)
    c = algebra.random_vector(rng)
    # constant map differentiates to zero
    zero = algebra.directional(lambda gg: np.array(1.37), g, v)
    assert abs(zero) < 1e-12
    # matrix entries of the curve differentiate to v g
    got = algebra.directional(lambda gg: gg, g, v)
    assert np.linalg.norm(got - algebra.to_matrix(v) @ g) < 1e-9
    # the adjoint oracle
    got = algebra.directional(lambda gg: algebra.Ad(gg, c), g, v)
    want = algebra.bracket(v, algebra.Ad(g, c))
    assert np.linalg.norm(got - want) < 1e-7 * max(1.0, np.linalg.norm(want))


def test_maurer_cartan(algebra):
    rng = np.random.default_rng(4)
    v = algebra.random_vector(rng)
    e = algebra.identity()
    assert np.allclose(algebra.maurer_cartan(e, v, "left"), v)
    assert np.allclose(algebra.maurer_cartan(e, v, "right"), v)
    with pytest.raises(ValueError):
        algebra.maurer_cartan(e, v, "middle")


def test_maurer_cartan_rotation():
    alg = make_group("so3")
    g = alg.exp(0.5 * np.pi * np.array([0.0, 0.0, 1.0]))
    got = alg.maurer_cartan(g, np.array([1.0, 0.0, 0.0]), "left")
    assert np.linalg.norm(got - np.array([0.0, -1.0, 0.0])) < 1e-12


def test_membership_residual(algebra):
    rng = np.random.default_rng(5)
    g = algebra.random_group(rng)
    assert algebra.membership_residual(g) < algebra.group_tolerance


def test_log_roundtrip(algebra):
    rng = np.random.default_rng(6)
    x = 0.5 * algebra.random_vector(rng)
    assert np.linalg.norm(algebra.log(algebra.exp(x)) - x) < 1e-10


def test_polynomials():
    su2 = make_group("su2")
    p = quadratic_polynomial(su2)
    x = np.array([1.0, 2.0, -1.0])
    assert abs(p(x, x) - 0.5 * su2.pairing(x, x)) < 1e-14
    assert cubic_polynomial(su2) is None
    h3 = make_group("heisenberg3")
    p3 = cubic_polynomial(h3)
    assert p3 is not None
    assert abs(p3(np.array([2.0, 0, 0]), np.array([2.0, 0, 0]),
                  np.array([2.0, 0, 0])) - 8.0) < 1e-14
