"""The transitive Lie algebroid over the group: anchor, bracket, connections.

Conventions: the tangent bundle of G is right-trivialized, X <-> v with
theta^R(X) = v.  Constant-v frames are then right-invariant vector fields
and satisfy theta^R([X, Y]) = -[v, w] for constant v, w; Cartan formulas
below carry that frame-bracket correction explicitly.
"""

from __future__ import annotations

import numpy as np

from .sections import AlgebroidSection, extend, time_derivative

__all__ = [
    "anchor",
    "bracket",
    "generator",
    "ConnectionFamily",
    "build_alpha",
    "invariant_alpha0",
    "connection_apply",
    "curvature",
    "generator_vertical_part",
    "kappa_value",
    "KappaFamily",
]


def anchor(section, g):
    """Anchor value in right trivialization: just the datum v(g)."""
    return section.v(g)


def bracket(xi, zeta, h=1e-4):
    """Algebroid bracket [xi, zeta] = -[xi, zeta]_g + X zeta - Y xi.

    X, Y are the right-trivialized fields of the anchors v_xi, v_zeta; the
    derivative terms are Richardson central differences in the group
    argument.  The result carries a composed analytic time derivative when
    both inputs do.
    """
    alg = xi.algebra

    def profile(g, t):
        vx = xi.v(g)
        vz = zeta.v(g)
        term = -alg.bracket(xi.profile(g, t), zeta.profile(g, t))
        term = term + alg.directional(lambda gg: zeta.profile(gg, t), g, vx, h=h)
        term = term - alg.directional(lambda gg: xi.profile(gg, t), g, vz, h=h)
        return term

    def v(g):
        vx = xi.v(g)
        vz = zeta.v(g)
        out = -alg.bracket(vx, vz)
        out = out + alg.directional(zeta.v, g, vx, h=h)
        out = out - alg.directional(xi.v, g, vz, h=h)
        return out

    dprofile = None
    if xi.dprofile is not None and zeta.dprofile is not None:
        def dprofile(g, t):
            vx = xi.v(g)
            vz = zeta.v(g)
            term = -alg.bracket(xi.dprofile(g, t), zeta.profile(g, t))
            term = term - alg.bracket(xi.profile(g, t), zeta.dprofile(g, t))
            term = term + alg.directional(lambda gg: zeta.dprofile(gg, t), g, vx, h=h)
            term = term - alg.directional(lambda gg: xi.dprofile(gg, t), g, vz, h=h)
            return term

    name = f"[{xi.name},{zeta.name}]" if xi.name or zeta.name else ""
    return AlgebroidSection(alg, profile, v, dprofile=dprofile, name=name)


def generator(algebra, x):
    """Action generator section: constant profile -x, anchor Ad_g x - x."""
    from .sections import constant_profile_section
    sec = constant_profile_section(algebra, -np.asarray(x, dtype=float),
                                   name="generator")
    return sec


class ConnectionFamily:
    """A t-family of g-valued 1-forms alpha_t with alpha_{t+1} = g . alpha_t.

    Built from a base form alpha_0(g, v) by the standard interpolation
    alpha_t = alpha_n + f(t - n)(alpha_{n+1} - alpha_n) with
    alpha_n = g^n . alpha_0, where g . a = Ad_g a - theta^R is the gauge
    action.  Gauge periodicity holds by construction for every real t.
    """

    def __init__(self, algebra, alpha0, bump, invariant=False):
        self.algebra = algebra
        self.alpha0 = alpha0
        self.bump = bump
        self.invariant = invariant

    def _alpha_n(self, n, g, v):
        """alpha_n(g, v) = (g^n . alpha_0)(g, v) by the gauge recursion."""
        alg = self.algebra
        val = self.alpha0(g, v)
        if n > 0:
            for _ in range(n):
                val = alg.Ad(g, val) - v
            return val
        ginv = np.linalg.inv(g)
        for _ in range(-n):
            val = alg.Ad(ginv, val + v)
        return val

    def __call__(self, t, g, v):
        n = int(np.floor(t))
        s = t - n
        an = self._alpha_n(n, g, v)
        an1 = self._alpha_n(n + 1, g, v)
        return an + self.bump(s) * (an1 - an)

    def tderiv(self, t, g, v):
        n = int(np.floor(t))
        s = t - n
        an = self._alpha_n(n, g, v)
        an1 = self._alpha_n(n + 1, g, v)
        return self.bump.deriv(s) * (an1 - an)

    def gauge_residual(self, t, g, v):
        """|alpha_{t+1} - Ad_g alpha_t + v| at the sample."""
        lhs = self(t + 1.0, g, v)
        rhs = self.algebra.Ad(g, self(t, g, v)) - np.asarray(v, dtype=float)
        return float(np.linalg.norm(lhs - rhs))

    def equivariance_residual(self, t, g, v, k):
        """|alpha_t(Ad_k g)(Ad_k v) - Ad_k alpha_t(g)(v)| for invariant families."""
        alg = self.algebra
        gk = k @ g @ np.linalg.inv(k)
        lhs = self(t, gk, alg.Ad(k, v))
        rhs = alg.Ad(k, self(t, g, v))
        return float(np.linalg.norm(lhs - rhs))


def build_alpha(algebra, alpha0=None, bump=None, invariant=None):
    """ConnectionFamily from a base 1-form (default alpha_0 = 0, invariant)."""
    from .sections import BumpFunction
    if bump is None:
        bump = BumpFunction()
    if alpha0 is None:
        def alpha0(g, v):
            return np.zeros(algebra.dim)
        if invariant is None:
            invariant = True
    if invariant is None:
        invariant = False
    return ConnectionFamily(algebra, alpha0, bump, invariant=invariant)


def invariant_alpha0(algebra, coeffs):
    """Invariant base form a v + b Ad_g v + c Ad_{g^{-1}} v from three scalars."""
    a, b, c = coeffs

    def alpha0(g, v):
        v = np.asarray(v, dtype=float)
        out = a * v
        if b:
            out = out + b * algebra.Ad(g, v)
        if c:
            out = out + c * algebra.Ad(np.linalg.inv(g), v)
        return out

    return alpha0


def connection_apply(alpha, xi):
    """theta^alpha(xi) = xi + alpha_t(a(xi)): the vertical (L-) part of xi."""
    alg = alpha.algebra

    def profile(g, t):
        return xi.profile(g, t) + alpha(t, g, xi.v(g))

    def v(g):
        return np.zeros(alg.dim)

    dprofile = None
    if xi.dprofile is not None:
        def dprofile(g, t):
            return xi.dprofile(g, t) + alpha.tderiv(t, g, xi.v(g))

    return AlgebroidSection(alg, profile, v, dprofile=dprofile,
                            name=f"theta({xi.name})")


def curvature(alpha, g, t, v, w, h=1e-4):
    """F^{alpha_t}(X, Y) = d alpha_t(X, Y) + [alpha_t(X), alpha_t(Y)].

    d alpha_t in constant right-trivialized frames:
    D_v alpha_t(., w) - D_w alpha_t(., v) - alpha_t(g, -[v, w]).
    """
    alg = alpha.algebra
    d = alg.directional(lambda gg: alpha(t, gg, w), g, v, h=h)
    d = d - alg.directional(lambda gg: alpha(t, gg, v), g, w, h=h)
    d = d - alpha(t, g, -alg.bracket(v, w))
    return d + alg.bracket(alpha(t, g, v), alpha(t, g, w))


def generator_vertical_part(alpha, x, g, t):
    """Vertical part of the action generator: -x + alpha_t(g, Ad_g x - x).

    Requires an invariant family; the result is an L-section value at (g, t).
    """
    if not alpha.invariant:
        raise ValueError("generator decomposition needs an invariant connection")
    alg = alpha.algebra
    x = np.asarray(x, dtype=float)
    return -x + alpha(t, g, alg.Ad(g, x) - x)


def kappa_value(xi, g, t):
    """The tautological family kappa_t(xi) = -xi(g, t)."""
    return -extend(xi, g, t)


class KappaFamily:
    """kappa_t as a OneFormFamily-compatible object: algebroid valued, gauge g.

    kappa_t(xi) = -xi_t; the gauge element is the identity map g -> g, and
    kappa_{t+1} = Ad_g kappa_t - a* theta^R follows from the seam rule.
    """

    def __init__(self, algebra):
        self.algebra = algebra

    def value(self, t, g, xi):
        return kappa_value(xi, g, t)

    def tderiv(self, t, g, xi, h_t=1e-5):
        return -time_derivative(xi, g, t, h_t=h_t)

    def gauge(self, g):
        return g
