"""Radial model domains {x in R^n : x_n > profile(|x'|^2)} and the x'-series
of the geometric quantities built from the boundary profile.

The profile is known through its jet a_k = (d/ds)^k profile(0), k >= 1 (the
value at 0 is 0: the boundary passes through the origin with horizontal
tangent plane).  All series are truncated x'-Taylor expansions represented
as term sums.  A generic domain keeps the a_k as polynomial generators, so
expansion coefficients come out as exact jet polynomials.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .jets import JetPoly
from .symbols import Terms


@dataclass(frozen=True)
class DomainSpec:
    """Dimension and boundary jet of a radial model domain.

    With symbolic=True the numeric jet is ignored and every a_k is kept as
    a polynomial generator.
    """

    n: int
    jet: tuple = (0,)
    symbolic: bool = False

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("dimension must be >= 2")
        if len(self.jet) < 1:
            raise ValueError("jet must contain at least a1")
        object.__setattr__(self, "jet", tuple(Fraction(a) for a in self.jet))

    @staticmethod
    def generic(n):
        return DomainSpec(n, (0,), symbolic=True)

    @staticmethod
    def halfspace(n):
        return DomainSpec(n, (0,))

    @staticmethod
    def ball(n, radius):
        """Jet of profile(s) = R - sqrt(R^2 - s), the radius-R ball tangent
        to the boundary hyperplane at the origin: a1 = 1/(2R), a2 = 1/(4R^3),
        a3 = 3/(8R^5), ...
        """
        r = Fraction(radius)
        jet = []
        for k in range(1, 5):
            c = Fraction(
                math.factorial(2 * k - 2), math.factorial(k - 1) * 2 ** (2 * k - 1)
            )
            jet.append(c / r ** (2 * k - 1))
        return DomainSpec(n, tuple(jet))

    def coeff(self, k):
        """a_k as a JetPoly."""
        if self.symbolic:
            return JetPoly.gen(k)
        if 1 <= k <= len(self.jet):
            return JetPoly.const(self.jet[k - 1])
        return JetPoly.zero()


def u_series(n):
    """|x'|^2 as a term sum."""
    t = Terms.zero(n)
    for j in range(n - 1):
        xp = [0] * (n - 1)
        xp[j] = 2
        t = t + Terms.monomial(n, 1, xp=xp)
    return t


def profile_derivative_series(dom, order, cap):
    """x'-series of (d/ds)^order profile at s = |x'|^2:
    sum_{k >= max(order,1)} a_k |x'|^(2(k-order)) / (k-order)!.
    """
    n = dom.n
    u = u_series(n)
    kmax = cap // 2 + order
    out = Terms.zero(n)
    upow = Terms.monomial(n, 1)
    for k in range(order, kmax + 1):
        if k >= 1:
            c = dom.coeff(k)
            if not c.is_zero():
                out = out + upow.scale(c.scale(Fraction(1, math.factorial(k - order))))
        upow = (upow * u).truncate_weight(cap)
        if upow.is_zero():
            break
    return out.truncate_weight(cap)


class DomainSeries:
    """Truncated expansions of the chart geometry for one model domain.

    Stores, to x'-weight `cap`:
      grad[j]   -- the j-th component of grad(phi), phi(x') = profile(|x'|^2)
      sig_grad  -- the stored-frequency pairing with grad(phi) (the quantity
                   whose analytic value is  i * xi' . grad(phi))
      grad_sq   -- |grad(phi)|^2
      lap       -- tangential Laplacian of phi
    """

    def __init__(self, dom, cap):
        self.dom = dom
        self.n = dom.n
        self.cap = cap
        n = dom.n
        p1 = profile_derivative_series(dom, 1, cap)
        p2 = profile_derivative_series(dom, 2, cap)
        u = u_series(n)
        self.grad = []
        for j in range(n - 1):
            xj = [0] * (n - 1)
            xj[j] = 1
            self.grad.append((p1 * Terms.monomial(n, 2, xp=xj)).truncate_weight(cap))
        sig = Terms.zero(n)
        for j in range(n - 1):
            key = [0] * (n - 1)
            key[j] = 1
            xj = [0] * (n - 1)
            xj[j] = 1
            sig = sig + Terms.monomial(n, 1, xp=xj, xi=key)
        self.sig_grad = (p1.scale(2) * sig).truncate_weight(cap)
        self.grad_sq = (p1 * p1 * u).scale(4).truncate_weight(cap)
        self.lap = (p1.scale(2 * (n - 1)) + (p2 * u).scale(4)).truncate_weight(cap)
