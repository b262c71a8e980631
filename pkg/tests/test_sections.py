"""Path sections: seams, extension, time calculus, quadrature."""

import numpy as np
import pytest

from atiyahcheck.liealg import make_group
from atiyahcheck.sections import (AlgebroidSection, BumpFunction, TimeGrid,
                                  constant_profile_section, extend,
                                  integrate_01, loop_section, random_section,
                                  random_twisted_loop, template_section,
                                  time_derivative)


@pytest.fixture
def su2():
    return make_group("su2")


def test_grid_validation():
    with pytest.raises(ValueError):
        TimeGrid(4)
    with pytest.raises(ValueError):
        TimeGrid(1)
    g = TimeGrid(5)
    assert abs(g.weights.sum() - 1.0) < 1e-14


def test_simpson_oracles():
    grid = TimeGrid(201)
    assert abs(integrate_01(lambda t: 1.0, grid) - 1.0) < 1e-14
    two_pi = 2 * np.pi
    assert abs(integrate_01(lambda t: np.sin(two_pi * t) * two_pi * np.cos(two_pi * t),
                            grid)) < 1e-12
    assert abs(integrate_01(lambda t: two_pi * np.cos(two_pi * t) ** 2, grid)
               - np.pi) < 1e-8


def test_simpson_fourth_order():
    f = lambda t: np.exp(t) * np.sin(3 * t)
    exact = integrate_01(f, TimeGrid(1601))
    e1 = abs(integrate_01(f, TimeGrid(11)) - exact)
    e2 = abs(integrate_01(f, TimeGrid(21)) - exact)
    assert e1 / e2 >= 12.0


def test_bump_flat_ends():
    f = BumpFunction()
    assert f(0.0) == 0.0 and f(0.05) == 0.0
    assert f(1.0) == 1.0 and f(0.97) == 1.0
    assert f.deriv(0.02) == 0.0 and f.deriv(0.99) == 0.0
    # derivative consistent with finite differences in the interior
    for t in (0.2, 0.5, 0.77):
        fd = (f(t + 1e-6) - f(t - 1e-6)) / 2e-6
        assert abs(fd - f.deriv(t)) < 1e-7


def test_constant_section_seam(su2):
    rng = np.random.default_rng(0)
    g = su2.random_group(rng)
    c = su2.random_vector(rng)
    sec = constant_profile_section(su2, c)
    assert sec.compatibility_residual(g) < 1e-14
    # constant sections stay constant under extension
    assert np.linalg.norm(extend(sec, g, 1.5) - c) < 1e-12
    assert np.linalg.norm(extend(sec, g, -0.75) - c) < 1e-12


def test_template_zero(su2):
    bump = BumpFunction()
    zero = template_section(su2, lambda g: np.zeros(3), lambda g: np.zeros(3), bump)
    g = su2.identity()
    assert np.linalg.norm(zero.profile(g, 0.4)) == 0.0


def test_template_generator_cancellation(su2):
    # a = -x, v = Ad_g x - x makes the bump coefficient vanish identically
    rng = np.random.default_rng(1)
    x = su2.random_vector(rng)
    bump = BumpFunction()
    sec = template_section(su2, lambda g: -x,
                           lambda g: su2.Ad(g, x) - x, bump)
    g = su2.random_group(rng)
    for t in (0.0, 0.31, 0.8):
        assert np.linalg.norm(sec.profile(g, t) + x) < 1e-12


def test_loop_extension(su2):
    rng = np.random.default_rng(2)
    g = su2.random_group(rng)
    z = random_twisted_loop(su2, rng)
    # v = 0: iterated seam gives Ad_g^2 at t = 2.25
    got = extend(z, g, 2.25)
    want = su2.Ad(g, su2.Ad(g, z.profile(g, 0.25)))
    assert np.linalg.norm(got - want) < 1e-10
    # inverse seam round trip
    back = extend(z, g, -0.75)
    assert np.linalg.norm(su2.Ad(g, back) - z.profile(g, 0.25)) < 1e-10


def test_time_derivative(su2):
    g = su2.identity()
    e1 = np.array([1.0, 0.0, 0.0])
    two_pi = 2 * np.pi
    z = loop_section(su2, lambda t: np.sin(two_pi * t) * e1)
    got = time_derivative(z, g, 0.3)
    want = two_pi * np.cos(two_pi * 0.3) * e1
    assert np.linalg.norm(got - want) < 1e-6
    # constant sections have zero derivative
    c = constant_profile_section(su2, e1)
    assert np.linalg.norm(time_derivative(c, su2.identity(), 0.5)) == 0.0


def test_template_derivative_consistency(su2):
    rng = np.random.default_rng(3)
    g = su2.random_group(rng)
    sec = random_section(su2, rng)
    for t in (0.2, 0.5, 0.85):
        fd = (extend(sec, g, t + 1e-5) - extend(sec, g, t - 1e-5)) / 2e-5
        assert np.linalg.norm(sec.dprofile(g, t) - fd) < 1e-6


def test_extend_cocycle_property(su2):
    rng = np.random.default_rng(4)
    g = su2.random_group(rng)
    sec = random_section(su2, rng)
    for t in (-1.2, -0.4, 0.1, 0.9, 1.7):
        lhs = extend(sec, g, t + 1.0)
        rhs = su2.Ad(g, extend(sec, g, t)) + sec.v(g)
        assert np.linalg.norm(lhs - rhs) < 1e-10


def test_twisted_loop_is_section(su2):
    rng = np.random.default_rng(5)
    z = random_twisted_loop(su2, rng)
    for _ in range(3):
        g = su2.random_group(rng, scale=0.5)
        assert z.compatibility_residual(g) < 1e-9
        assert z.is_loop(g)


def test_require_compatible(su2):
    rng = np.random.default_rng(9)
    g = su2.random_group(rng)
    good = random_section(su2, rng)
    good.require_compatible(g)
    bad = AlgebroidSection(su2, lambda gg, t: np.array([t, 0.0, 0.0]),
                           lambda gg: np.zeros(3))
    with pytest.raises(ValueError):
        bad.require_compatible(g)
