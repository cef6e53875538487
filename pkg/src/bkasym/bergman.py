"""Operator chain from the Poisson symbol to the harmonic Bergman projection.

With K the harmonic extension operator and k its symbol, the chain is

    k* (adjoint, a trace symbol)        ->  Lambda = K*K   (boundary psdo)
    p ~ Lambda^(-1)  (parametrix)       ->  v = K Lambda^(-1)  (potential)
    g = symbol of K Lambda^(-1) K*      (the projection's Green symbol)

plus the weighted variant Lambda_w = K* x_n^alpha e^(g(x')) K and the
principal-symbol identities for the first-order Sobolev inner product.
"""

from dataclasses import dataclass
from fractions import Fraction

from .symbols import (
    POISSON,
    PSDO,
    BoundarySymbol,
    KindError,
    Terms,
    TruncationError,
    adjoint_symbol,
    leibniz_compose,
    terms_reciprocal,
    xn_integral_compose,
    _dxi_alpha,
    _dxp_alpha,
    _multiindices,
    _alpha_factorial,
)


@dataclass
class PsdoExpansion:
    """Graded boundary pseudodifferential symbol, possibly with the common
    weighted prefactor Gamma(alpha+1) * (2w)^(-alpha) kept implicit."""

    sym: BoundarySymbol
    alpha: Fraction = None

    def grade(self, j):
        return self.sym.grade(j)

    @property
    def n(self):
        return self.sym.n

    @property
    def lead_deg(self):
        return self.sym.lead_deg


def _exp_series(n, g_xpoly, cap):
    """exp(g(x')) as a truncated term sum; g must vanish at x' = 0."""
    if not g_xpoly:
        return Terms.monomial(n, 1)
    g = Terms.zero(n)
    for xp, c in g_xpoly.items():
        if sum(xp) == 0:
            raise ValueError("the boundary weight factor must satisfy g(0) = 0")
        g = g + Terms.monomial(n, Fraction(c), xp=xp)
    acc = Terms.monomial(n, 1)
    power = Terms.monomial(n, 1)
    fact = Fraction(1)
    for m in range(1, cap + 1):
        power = (power * g).truncate_weight(cap)
        if power.is_zero():
            break
        fact /= m
        acc = acc + power.scale(fact)
    return acc


def lambda_symbol(k, depth, alpha=None, g_xpoly=None):
    """Symbol of the boundary Gram operator K*K (or its weighted variant).

    Unweighted: s_{-m-1} = sum_{l+j+|a|=m} (1/a!) int_0^inf
    D^a k*_{-j} d_x'^a k_{-l} dx_n, leading value 1/(2|xi'|) at the center.

    Weighted (weight x_n^alpha e^(g(x')) in the chart): same sums with the
    integral rule Gamma(alpha+q+1)/(2w)^(alpha+q+1); the returned grades
    carry rational coefficients and the common transcendental factor
    Gamma(alpha+1) (2w)^(-alpha) is recorded in the PsdoExpansion metadata.
    Grade 0 reproduces the known weighted principal symbol
    Gamma(alpha+1) e^(g(x')) / (2|xi'|)^(alpha+1).
    """
    if k.kind != POISSON:
        raise KindError("lambda_symbol expects a Poisson symbol")
    if k.weight_cap < 2 * depth:
        raise TruncationError(
            f"need the Poisson symbol at graded cap >= {2 * depth}, "
            f"have {k.weight_cap}"
        )
    if alpha is not None:
        alpha = Fraction(alpha)
        if alpha <= -1:
            raise ValueError("weight exponent must be > -1")
    kstar = adjoint_symbol(k, depth)
    if alpha is None and not g_xpoly:
        sym = leibniz_compose(kstar, k, depth)
        return PsdoExpansion(sym)
    n = k.n
    cap = min(kstar.weight_cap, k.weight_cap)
    eg = _exp_series(n, g_xpoly, cap)
    egk = {j: eg.mul_capped(gk, cap - j) for j, gk in k.grades.items()}
    grades = {m: Terms.zero(n) for m in range(depth + 1)}
    for alpha_idx, order in _multiindices(n - 1, depth):
        fact = Fraction(1, _alpha_factorial(alpha_idx))
        for j, gt in kstar.grades.items():
            if j + order > depth:
                continue
            da = _dxi_alpha(gt, alpha_idx, True, False)
            for l, gk in egk.items():
                m = j + l + order
                if m > depth:
                    continue
                db = _dxp_alpha(gk, alpha_idx)
                piece = xn_integral_compose(da, db, alpha=alpha, cap=cap - m)
                grades[m] = grades[m] + piece.scale(fact)
    sym = BoundarySymbol(PSDO, n, -1, cap, grades)
    return PsdoExpansion(sym, alpha=Fraction(0) if alpha is None else alpha)


def invert_psdo(s, depth):
    """Parametrix expansion of an elliptic boundary psdo.

    p_lead = 1/s_lead and, for m > 0,
    p_{lead-m} = -(1/s_lead) * sum_{k+j+|a|=m, j<m} (1/a!) D^a p_{lead-j}
                 d_x'^a s_(k steps below lead);  the composition p * s is
    the identity modulo grades below the computed depth.
    """
    sym = s.sym if isinstance(s, PsdoExpansion) else s
    if sym.kind != PSDO:
        raise KindError("invert_psdo expects a boundary psdo symbol")
    n = sym.n
    cap = sym.weight_cap
    if cap < depth:
        raise TruncationError("insufficient graded cap for the requested depth")
    lead = sym.grade(0)
    if lead.is_zero():
        raise ValueError("zero leading symbol: not elliptic")
    inv_lead = terms_reciprocal(lead, cap)
    grades = {0: inv_lead}
    for m in range(1, depth + 1):
        total = Terms.zero(n)
        for alpha_idx, order in _multiindices(n - 1, m):
            for j in range(m):
                k = m - j - order
                if k < 0:
                    continue
                pa = grades.get(j)
                sk = sym.grade(k)
                if pa is None or pa.is_zero() or sk.is_zero():
                    continue
                fact = Fraction(1, _alpha_factorial(alpha_idx))
                piece = _dxi_alpha(pa, alpha_idx, False, False).mul_capped(
                    _dxp_alpha(sk, alpha_idx), cap - m
                )
                total = total + piece.scale(fact)
        grades[m] = (-(inv_lead.mul_capped(total, cap - m)))
    return PsdoExpansion(BoundarySymbol(PSDO, n, -sym.lead_deg, cap, grades))


def poisson_times_psdo(k, p, depth):
    """Potential symbol of K P for a boundary psdo P."""
    psym = p.sym if isinstance(p, PsdoExpansion) else p
    return leibniz_compose(k, psym, depth)


def bergman_green_symbol(k, p, depth):
    """Green symbol of K Lambda^(-1) K*: grades g_(1), g_(0), ...

    v = K Lambda^(-1) is a potential symbol of order 1; composing with the
    adjoint trace symbol gives the Green symbol, whose xn = yn = 0 part at
    each grade is the corresponding grade of Lambda^(-1).
    """
    v = poisson_times_psdo(k, p, depth)
    kstar = adjoint_symbol(k, depth)
    return leibniz_compose(v, kstar, depth)


@dataclass
class SobolevReport:
    """Principal-level data for the first-order Sobolev boundary operator."""

    gram_principal: Terms
    derivative_principals: list
    sum_of_squares: Terms
    sum_matches: bool
    operator_principal: Terms
    operator_matches: bool

    @property
    def verdict(self):
        return self.sum_matches and self.operator_matches


def sobolev_identity_check(k):
    """Check the principal-symbol identities for T = Lambda + sum R_j* Lambda R_j.

    R_j is the boundary symbol chain Lambda^(-1) K* d_j K.  At the chart
    center:  sum_j |sigma(R_j)|^2 = 1 / (2 sigma(Lambda)^2)  and
    sigma(T) = (1/2) sigma(Lambda)^(-1).
    """
    if k.kind != POISSON:
        raise KindError("sobolev_identity_check expects a Poisson symbol")
    n = k.n
    k0 = k.center_grade(0)
    k0star = k0.flip_xi()
    gram = xn_integral_compose(k0star, k0)  # sigma(Lambda) = 1/(2w) at center
    inv_gram = terms_reciprocal(gram, 0)
    principals = []
    for j in range(n - 1):
        key = [0] * (n - 1)
        key[j] = 1
        dk = Terms.monomial(n, 1, xi=key) * k0  # principal symbol of d_j K
        principals.append(inv_gram * xn_integral_compose(k0star, dk))
    dk_n = k0.dxn(True)
    principals.append(inv_gram * xn_integral_compose(k0star, dk_n))
    total = Terms.zero(n)
    for sig in principals:
        total = total + sig * sig.flip_xi()
    # 1 / (2 sigma(Lambda)^2)
    target = terms_reciprocal((gram * gram).scale(2), 0)
    op_principal = gram * total
    op_target = terms_reciprocal(gram.scale(2), 0)  # (1/2) * 1/sigma(Lambda)
    return SobolevReport(
        gram_principal=gram,
        derivative_principals=principals,
        sum_of_squares=total,
        sum_matches=total == target,
        operator_principal=op_principal,
        operator_matches=op_principal == op_target,
    )
