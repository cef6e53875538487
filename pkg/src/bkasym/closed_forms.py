"""Closed-form reference kernels used as oracles.

Half-space and ball Poisson kernels, half-space and ball harmonic Bergman
kernels, and the weighted half-space leading kernel through the Gauss
hypergeometric function.  Everything here is floating point; the exact
counterparts live in the symbolic modules.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PointPair:
    """An evaluation pair: x interior, y interior or boundary."""

    x: tuple
    y: tuple
    n: int

    def __post_init__(self):
        if len(self.x) != self.n or len(self.y) != self.n:
            raise ValueError("point dimension mismatch")


class SingularPointError(ValueError):
    pass


def dim_constant(n):
    """c_n = Gamma(n/2) / pi^(n/2), the half-space Poisson normalization."""
    return math.gamma(n / 2) / math.pi ** (n / 2)


def sphere_area(n):
    """Surface area of the unit sphere in R^n."""
    return 2 * math.pi ** (n / 2) / math.gamma(n / 2)


def eval_poisson_closed(kind, pp):
    """Poisson kernel of the unit ball or the upper half-space.

    ball:      K(x, zeta) = (c_n/2) (1-|x|^2)/|x-zeta|^n,   |x|<1, |zeta|=1
    halfspace: K(x, zeta) = c_n x_n / |x-zeta|^n,           x_n>0, zeta_n=0
    """
    x = np.asarray(pp.x, dtype=float)
    z = np.asarray(pp.y, dtype=float)
    n = pp.n
    cn = dim_constant(n)
    d = np.linalg.norm(x - z)
    if d == 0.0:
        raise SingularPointError("evaluation at the kernel singularity")
    if kind == "ball":
        if np.linalg.norm(x) >= 1 or abs(np.linalg.norm(z) - 1) > 1e-12:
            raise ValueError("ball kernel needs |x|<1 and |zeta|=1")
        return 0.5 * cn * (1 - float(np.dot(x, x))) / d ** n
    if kind == "halfspace":
        if x[-1] <= 0 or abs(z[-1]) > 1e-12:
            raise ValueError("half-space kernel needs x_n>0 and zeta_n=0")
        return cn * x[-1] / d ** n
    raise ValueError(f"unknown domain kind {kind!r}")


def eval_bergman_closed(kind, pp):
    """Harmonic Bergman kernel of the unit ball or the upper half-space.

    ball:      (c_n/2) [(n-4)|x|^4|y|^4 + (8x.y-2n-4)|x|^2|y|^2 + n]
               / (1 - 2x.y + |x|^2|y|^2)^(n/2+1)
    halfspace: 2c_n (n (x_n+y_n)^2 - |x-y~|^2) / |x-y~|^(n+2),
               y~ = (y', -y_n) the reflected point.
    """
    x = np.asarray(pp.x, dtype=float)
    y = np.asarray(pp.y, dtype=float)
    n = pp.n
    cn = dim_constant(n)
    if kind == "ball":
        x2, y2, xy = float(np.dot(x, x)), float(np.dot(y, y)), float(np.dot(x, y))
        if x2 > 1 or y2 > 1:
            raise ValueError("ball kernel needs |x|,|y| <= 1")
        den = 1 - 2 * xy + x2 * y2
        if den <= 0:
            raise SingularPointError("evaluation at the boundary diagonal")
        num = (n - 4) * x2 ** 2 * y2 ** 2 + (8 * xy - 2 * n - 4) * x2 * y2 + n
        return 0.5 * cn * num / den ** (n / 2 + 1)
    if kind == "halfspace":
        if x[-1] < 0 or y[-1] < 0:
            raise ValueError("half-space kernel needs x_n, y_n >= 0")
        yref = y.copy()
        yref[-1] = -yref[-1]
        d2 = float(np.dot(x - yref, x - yref))
        if d2 == 0.0:
            raise SingularPointError("evaluation at the boundary diagonal")
        t = x[-1] + y[-1]
        return 2 * cn * (n * t * t - d2) / d2 ** (n / 2 + 1)
    raise ValueError(f"unknown domain kind {kind!r}")


def hyp2f1(a, b, c, z, tol=1e-12, max_terms=4000):
    """Gauss hypergeometric function for real arguments with z <= 0.

    Power series for |z| <= 1/2, otherwise the z/(z-1) transformation
    2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)), whose argument lies
    in [0,1) for z <= 0, keeping the series uniformly convergent.
    """
    if z >= 1:
        raise ValueError("evaluator restricted to z < 1")
    if z < -0.5:
        # argument of the transformed series lies in (1/3, 1)
        return (1 - z) ** (-a) * hyp2f1(a, c - b, c, z / (z - 1), tol=tol)
    term = 1.0
    total = 1.0
    for m in range(max_terms):
        term *= (a + m) * (b + m) / ((c + m) * (m + 1)) * z
        total += term
        if abs(term) <= tol * max(1.0, abs(total)) and m > 2:
            return total
    raise RuntimeError("hypergeometric series did not converge")


def eval_weighted_halfspace(alpha, g0, pp):
    """Leading kernel of the weighted half-space projection.

    For the weight x_n^alpha e^(g), the projection's Green symbol has
    principal part (2|xi'|)^(alpha+1) e^(-(x_n+y_n)|xi'|) / (Gamma(alpha+1)
    e^(g)); this evaluates its inverse Fourier transform at x' - y':

      2^(2 alpha + 2) Gamma((n+alpha)/2) Gamma((n+alpha+1)/2)
      / (pi^(n/2) Gamma((n-1)/2) Gamma(alpha+1) e^(g0) T^(n+alpha))
      * 2F1((n+alpha)/2, (n+alpha+1)/2; (n-1)/2; -r^2/T^2),

    T = x_n + y_n, r = |x' - y'|.  At alpha = 0 this reduces to the
    unweighted leading Bergman term  -2 d/dT [c_n T / (T^2+r^2)^(n/2)].
    """
    if alpha <= -1:
        raise ValueError("weight exponent must be > -1")
    x = np.asarray(pp.x, dtype=float)
    y = np.asarray(pp.y, dtype=float)
    n = pp.n
    T = x[-1] + y[-1]
    if T <= 0:
        raise SingularPointError("needs x_n + y_n > 0")
    r = float(np.linalg.norm(x[:-1] - y[:-1]))
    pref = (
        2.0 ** (2 * alpha + 2)
        * math.gamma((n + alpha) / 2)
        * math.gamma((n + alpha + 1) / 2)
        / (
            math.pi ** (n / 2)
            * math.gamma((n - 1) / 2)
            * math.gamma(alpha + 1)
            * math.exp(g0)
            * T ** (n + alpha)
        )
    )
    return pref * hyp2f1((n + alpha) / 2, (n + alpha + 1) / 2, (n - 1) / 2, -(r * r) / (T * T))
