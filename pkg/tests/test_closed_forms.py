import math

import numpy as np
import pytest
from scipy import integrate

from bkasym.oracle import ball_quadrature, sphere_quadrature
from bkasym.closed_forms import (
    PointPair,
    SingularPointError,
    dim_constant,
    eval_bergman_closed,
    eval_poisson_closed,
    eval_weighted_halfspace,
    hyp2f1,
    sphere_area,
)


def test_dim_constant():
    assert abs(dim_constant(3) - 1 / (2 * math.pi)) < 1e-15
    assert abs(dim_constant(2) - 1 / math.pi) < 1e-15


def test_poisson_examples():
    # ball center: c_n/2, and the boundary integral is 1
    val = eval_poisson_closed("ball", PointPair((0, 0, 0), (0, 0, 1), 3))
    assert abs(val - dim_constant(3) / 2) < 1e-15
    assert abs(val * sphere_area(3) - 1) < 1e-14
    # half-space at unit height above the pole
    val = eval_poisson_closed("halfspace", PointPair((0, 0, 1), (0, 0, 0), 3))
    assert abs(val - 1 / (2 * math.pi)) < 1e-15


def test_poisson_halfspace_normalization_quadrature():
    # int K((0,0,1), zeta) dzeta over R^2 = 1
    def f(r):
        return eval_poisson_closed(
            "halfspace", PointPair((0, 0, 1), (r, 0, 0), 3)
        ) * 2 * math.pi * r

    # compactify the radial tail with r = tan(u)
    g = lambda u: f(math.tan(u)) / math.cos(u) ** 2
    val = integrate.quad(g, 0, math.pi / 2 - 1e-12, limit=200)[0]
    assert abs(val - 1) < 1e-8


def test_poisson_positive():
    rng = np.random.default_rng(7)
    for _ in range(50):
        x = rng.uniform(-0.6, 0.6, 3)
        z = rng.normal(size=3)
        z /= np.linalg.norm(z)
        assert eval_poisson_closed("ball", PointPair(tuple(x), tuple(z), 3)) > 0


def test_poisson_mean_value():
    # ball Poisson reproduces harmonic polynomials from boundary data
    x = (0.2, -0.1, 0.3)
    for u in (
        lambda p: 1.0,
        lambda p: p[0],
        lambda p: p[0] * p[1],
        lambda p: p[0] ** 2 - p[2] ** 2,
        lambda p: p[0] ** 3 - 3 * p[0] * p[2] ** 2,
    ):
        val = sphere_quadrature(
            lambda z: eval_poisson_closed("ball", PointPair(x, z, 3)) * u(z)
        )
        assert abs(val - u(x)) < 1e-8 * max(1.0, abs(u(x)))


def test_bergman_examples():
    val = eval_bergman_closed("ball", PointPair((0, 0, 0), (0, 0, 0), 3))
    assert abs(val - dim_constant(3) / 2 * 3) < 1e-15
    val = eval_bergman_closed("halfspace", PointPair((0, 0, 1), (0, 0, 1), 3))
    assert abs(val - dim_constant(3) / 2) < 1e-15


def test_bergman_symmetry():
    rng = np.random.default_rng(3)
    for _ in range(25):
        x = tuple(rng.uniform(-0.55, 0.55, 3))
        y = tuple(rng.uniform(-0.55, 0.55, 3))
        a = eval_bergman_closed("ball", PointPair(x, y, 3))
        b = eval_bergman_closed("ball", PointPair(y, x, 3))
        assert abs(a - b) < 1e-13 * max(1.0, abs(a))


def test_bergman_reproduces_harmonic_polynomials():
    # interior quadrature of u(y) H(x,y) over the ball returns u(x)
    x = (0.25, 0.1, -0.2)
    for u, tol in (
        (lambda p: 1.0, 1e-6),
        (lambda p: p[1], 1e-6),
        (lambda p: p[0] * p[2], 1e-6),
        (lambda p: p[0] ** 2 - p[1] ** 2, 1e-6),
        (lambda p: p[2] ** 3 - 1.5 * p[2] * (p[0] ** 2 + p[1] ** 2) * 1.0, 1e-5),
        (
            lambda p: (p[0] ** 4 - 6 * p[0] ** 2 * p[1] ** 2 + p[1] ** 4),
            1e-4,
        ),
    ):
        val = ball_quadrature(
            lambda y: eval_bergman_closed("ball", PointPair(x, y, 3)) * u(y)
        )
        assert abs(val - u(x)) < tol * max(1.0, abs(u(x))), u


def test_singular_point_errors():
    with pytest.raises(SingularPointError):
        eval_poisson_closed("ball", PointPair((0, 0, 1), (0, 0, 1), 3))
    with pytest.raises(SingularPointError):
        eval_bergman_closed("halfspace", PointPair((0, 0, 0), (0, 0, 0), 3))


def test_hyp2f1_against_reference():
    import mpmath

    rng = np.random.default_rng(11)
    for _ in range(60):
        a, b, c = rng.uniform(0.1, 3.5, 3)
        z = -float(rng.uniform(0, 40))
        got = hyp2f1(a, b, c, z)
        want = float(mpmath.hyp2f1(a, b, c, z))
        assert abs(got - want) < 1e-10 * max(1.0, abs(want))


def test_weighted_alpha_zero_is_unweighted_leading():
    cn = dim_constant(3)
    rng = np.random.default_rng(5)
    for _ in range(10):
        xn, yn = rng.uniform(0.05, 1.0, 2)
        r = float(rng.uniform(0.01, 2.0))
        pp = PointPair((0, 0, xn), (r, 0, yn), 3)
        got = eval_weighted_halfspace(0.0, 0.0, pp)
        T = xn + yn
        rho2 = T * T + r * r
        want = 2 * cn * (3 * T * T - rho2) / rho2 ** 2.5
        assert abs(got - want) <= 1e-10 * max(1.0, abs(want))


def test_weighted_at_origin_is_prefactor():
    pp = PointPair((0, 0, 0.4), (0, 0, 0.6), 3)
    alpha = 0.75
    got = eval_weighted_halfspace(alpha, 0.0, pp)
    T = 1.0
    pref = (
        2 ** (2 * alpha + 2)
        * math.gamma((3 + alpha) / 2)
        * math.gamma((4 + alpha) / 2)
        / (math.pi ** 1.5 * math.gamma(1.0) * math.gamma(alpha + 1) * T ** (3 + alpha))
    )
    assert abs(got - pref) < 1e-12 * pref


def test_weighted_hankel_quadrature():
    from scipy import special

    def hankel(alpha, T, r):
        f = (
            lambda w: (2 * w) ** (alpha + 1)
            * math.exp(-T * w)
            / math.gamma(alpha + 1)
            * special.j0(r * w)
            * w
            / (2 * math.pi)
        )
        return integrate.quad(f, 0, 400 / T, limit=800)[0]

    for alpha, T, r in ((1.0, 1.0, 1.0), (0.5, 0.7, 1.3), (2.5, 1.2, 0.4)):
        pp = PointPair((0, 0, T / 2), (r, 0, T / 2), 3)
        got = eval_weighted_halfspace(alpha, 0.0, pp)
        want = hankel(alpha, T, r)
        assert abs(got - want) <= 1e-8 * max(1.0, abs(want))


def test_weighted_parameter_error():
    with pytest.raises(ValueError):
        eval_weighted_halfspace(-1.0, 0.0, PointPair((0, 0, 1), (0, 0, 1), 3))
