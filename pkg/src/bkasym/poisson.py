"""Graded recursion for the Poisson-operator symbol on a radial model domain.

Writing the harmonic-extension symbol as k ~ sum_j k_{-j} with k_{-j}
homogeneous of degree -j, the interior equation turns into the triangular
ODE system

    M k_{-j} = R k_{-j+1} + Z k_{-j+2},        k_1 = k_2 := 0,

in the normal variable, with the boundary data k_0 = 1, k_{-j} = 0 (j > 0)
at x_n = 0 and rapid decay as x_n -> +infinity.  Here, acting on
g = A(x', x_n, xi') e^(-x_n w) and in the stored frequency convention,

    M g = -(1+|grad phi|^2) g'' + 2 (xi.grad phi) g' + w^2 g
    R g = -(lap phi) g' - 2 grad phi . grad'(g') + 2 xi.grad'(g)
    Z g = lap' g

(primes on g are x_n derivatives, grad'/lap' act in x').  Every quantity is
expanded in x'-weight; the weight-0 block of M is the constant-coefficient
operator -d^2/dx_n^2 + w^2 acting on A e^(-x_n w), which is inverted in
closed form; the remaining weight-raising part of M is moved to the right
hand side and the layers are solved in increasing weight.  The polynomial
particular solution vanishing at x_n = 0 is the unique admissible one, so
no homogeneous correction is ever needed.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .domains import DomainSeries
from .symbols import POISSON, BoundarySymbol, Terms, TruncationError


@dataclass(frozen=True)
class EtaExpansion:
    """Truncated x'-expansions of the characteristic-root data.

    delta_eta is the series whose analytic value is i*(eta_plus - i*w): the
    full decaying exponential is e^(ix_n eta_plus) = e^(-x_n w) e^(x_n delta_eta).
    upsilon stores -i*(eta_plus - eta_minus) (value 2w at x' = 0) and denom
    stores 1/(1+|grad phi|^2).  All three are real in the stored convention.
    """

    n: int
    cap: int
    delta_eta: Terms
    upsilon: Terms
    denom: Terms


def _geometric_inverse(t, cap):
    """1/(1+v) for a term sum v of strictly positive weight."""
    n = t.n
    acc = Terms.monomial(n, 1)
    power = Terms.monomial(n, 1)
    for _ in range(cap):
        power = (-t * power).truncate_weight(cap)
        if power.is_zero():
            break
        acc = acc + power
    return acc


def _sqrt_one_plus(t, cap):
    """sqrt(1+v) for a term sum v of strictly positive weight."""
    n = t.n
    acc = Terms.monomial(n, 1)
    power = Terms.monomial(n, 1)
    coef = Fraction(1)
    for m in range(1, cap + 1):
        power = (t * power).truncate_weight(cap)
        if power.is_zero():
            break
        coef *= Fraction(3, 2) / m - 1  # binomial(1/2, m) ratio
        acc = acc + power.scale(coef)
    return acc


def eta_expansion(dom, W):
    """Expand the decaying characteristic root around the chart center.

    The root is  eta_pm = (xi'.grad phi  pm  i sqrt(|xi'|^2(1+|grad phi|^2)
    - (xi'.grad phi)^2)) / (1+|grad phi|^2);  at x' = 0 it reduces to
    eta_plus = i|xi'|, which is the branch with decay.
    """
    if W < 0:
        raise ValueError("weight must be >= 0")
    n = dom.n
    geo = DomainSeries(dom, W)
    # radicand = w^2 (1 + grad_sq) + sig_grad^2  (stored convention makes the
    # square of the pairing enter with a plus sign)
    winv2 = Terms.monomial(n, 1, w=-2)
    v = (geo.grad_sq + (geo.sig_grad * geo.sig_grad * winv2)).truncate_weight(W)
    root = Terms.monomial(n, 1, w=1) * _sqrt_one_plus(v, W)
    denom = _geometric_inverse(geo.grad_sq, W)
    one_plus = Terms.monomial(n, 1) + geo.grad_sq
    w1 = Terms.monomial(n, 1, w=1)
    delta = ((geo.sig_grad - root + w1 * one_plus) * denom).truncate_weight(W)
    upsilon = (root.scale(2) * denom).truncate_weight(W)
    return EtaExpansion(n, W, delta, upsilon, denom)


def solve_M0(rhs):
    """Unique decaying solution of (-d^2/dx_n^2 + w^2) g = rhs, g(0) = 0.

    rhs is a term sum (each term x_n^q times w/xi/x' factors, implicit
    e^(-x_n w)); the solution is the polynomial-times-exponential with no
    constant term:  for rhs = x_n^q, the top coefficient is
    1/(2w(q+1)) and b_m = (m+1) b_{m+1} / (2w) downwards.
    """
    n = rhs.n
    out = Terms(n)
    for (xp, xi, w, q, r), c in rhs.data.items():
        if r:
            raise ValueError("normal ODE right side cannot involve yn")
        b = Fraction(1, 2 * (q + 1))
        out._accumulate((xp, xi, w - 1, q + 1, 0), c.scale(b))
        for m in range(q, 0, -1):
            b = b * Fraction(m + 1, 2)
            out._accumulate((xp, xi, w - (q + 2 - m), m, 0), c.scale(b))
    return out


class _ModelOperators:
    """The x_n-stripped operators M_+ (weight-raising part of M), R and Z.

    Every product is truncated at the requested x'-weight cap on the fly.
    """

    def __init__(self, dom, cap):
        self.geo = DomainSeries(dom, cap)
        self.cap = cap
        self.n = dom.n

    def _dn(self, a):
        """x_n derivative of A in A e^(-x_n w):  A' - w A."""
        return a.dxn(True)

    def m_plus(self, a, cap=None):
        cap = self.cap if cap is None else cap
        g = self.geo
        app = self._dn(self._dn(a))
        ap = self._dn(a)
        return (-g.grad_sq.mul_capped(app, cap)) + g.sig_grad.mul_capped(
            ap, cap
        ).scale(2)

    def m_full(self, a, cap=None):
        """All of M, for residual checking."""
        cap = self.cap if cap is None else cap
        n = self.n
        one_plus = Terms.monomial(n, 1) + self.geo.grad_sq
        app = self._dn(self._dn(a))
        ap = self._dn(a)
        w2 = Terms.monomial(n, 1, w=2)
        return (
            -(one_plus.mul_capped(app, cap))
            + self.geo.sig_grad.mul_capped(ap, cap).scale(2)
            + w2.mul_capped(a, cap)
        )

    def r_op(self, a, cap=None):
        cap = self.cap if cap is None else cap
        g = self.geo
        n = self.n
        ap = self._dn(a)
        out = -(g.lap.mul_capped(ap, cap))
        for j in range(n - 1):
            out = out - g.grad[j].mul_capped(ap.dxp(j), cap).scale(2)
        for j in range(n - 1):
            key = [0] * (n - 1)
            key[j] = 1
            out = out + Terms.monomial(n, 1, xi=key).mul_capped(
                a.dxp(j), cap
            ).scale(2)
        return out

    def z_op(self, a, cap=None):
        cap = self.cap if cap is None else cap
        n = self.n
        out = Terms.zero(n)
        for j in range(n - 1):
            out = out + a.dxp(j).dxp(j)
        return out.truncate_weight(cap)


@lru_cache(maxsize=64)
def compute_poisson_symbols(dom, N, W):
    """Poisson symbol grades 0..N for the model domain, to x'-weight W.

    Results are cached; symbols are immutable by convention, so sharing is
    safe.

    The recursion is run at graded precision: grade j comes out exact
    through x'-weight W + N - j (in particular every grade is exact through
    weight W), which is the graded truncation cap W + N of the result.
    """
    if N < 0:
        raise ValueError("grade count must be >= 0")
    if W < 0:
        raise TruncationError("weight cap must be >= 0 for the requested grades")
    n = dom.n
    ops = _ModelOperators(dom, W + N)
    grades = []
    for j in range(N + 1):
        # grade j only needs to survive N - j more derivative-consuming steps
        cap_j = W + N - j
        rhs = Terms.zero(n)
        if j >= 1:
            rhs = rhs + ops.r_op(grades[j - 1], cap_j)
        if j >= 2:
            rhs = rhs + ops.z_op(grades[j - 2], cap_j)
        a = Terms.zero(n)
        pending = rhs
        for delta in range(cap_j + 1):
            layer_rhs = pending.weight_part(delta)
            if j == 0 and delta == 0:
                layer = Terms.monomial(n, 1)
            else:
                layer = solve_M0(layer_rhs)
                if not layer.subs_xn_zero().is_zero():
                    raise AssertionError("layer solution violates the boundary data")
            if layer.is_zero():
                continue
            a = a + layer
            pending = pending - ops.m_plus(layer, cap_j)
        grades.append(a)
    return BoundarySymbol(POISSON, n, 0, W + N, dict(enumerate(grades)))


def recursion_residual(dom, sym, j):
    """M k_{-j} - R k_{-j+1} - Z k_{-j+2}, exact through weight cap - j."""
    valid = sym.weight_cap - j
    ops = _ModelOperators(dom, valid)
    res = ops.m_full(sym.grade(j), valid)
    if j >= 1:
        res = res - ops.r_op(sym.grade(j - 1), valid)
    if j >= 2:
        res = res - ops.z_op(sym.grade(j - 2), valid)
    return res.truncate_weight(max(valid, 0))


def phase_factored_parts(sym, eta, j):
    """Coefficients of the exponential-factored form of grade j.

    Returns the term sum P with  k_{-j} = P e^(i x_n eta_plus), i.e.
    P = A_j e^(-x_n delta_eta); for j >= 1 this is the polynomial
    sum_q G_qj x_n^q with x_n-degree between 1 and 2j and G_qj homogeneous
    of degree q - j.
    """
    n = sym.n
    cap = sym.weight_cap - j
    acc = Terms.monomial(n, 1)
    power = Terms.monomial(n, 1)
    fact = Fraction(1)
    xn = Terms.monomial(n, 1, xn=1)
    for m in range(1, cap + 1):
        power = (power * xn * eta.delta_eta).truncate_weight(cap)
        if power.is_zero():
            break
        fact /= m
        acc = acc + power.scale((-1) ** m * fact)
    return sym.grade(j).mul_capped(acc, cap)
