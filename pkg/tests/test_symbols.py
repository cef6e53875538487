import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bkasym.jets import JetPoly
from bkasym.symbols import (
    GREEN,
    POISSON,
    PSDO,
    TRACE,
    BoundarySymbol,
    KindError,
    Terms,
    adjoint_symbol,
    canonicalize,
    derive,
    leibniz_compose,
    terms_reciprocal,
    xn_integral_compose,
)

# note: stored frequency variables are i-absorbed, so the analytic relation
# xi_1^2 + ... + xi_{n-1}^2 = w^2 reads xi^2-sum = -w^2 in stored form.


def test_canonicalize_defining_relation():
    # stored xi2^2 -> -w^2 - xi1^2  (analytic: xi2^2 = w^2 - xi1^2)
    out = dict(canonicalize(3, 1, xi=(0, 2)))
    assert out == {
        ((0, 0), (0, 0), 2, 0, 0): JetPoly.const(-1),
        ((0, 0), (2, 0), 0, 0, 0): JetPoly.const(-1),
    }


def test_canonicalize_identity_on_canonical():
    t = Terms.monomial(3, 5, xi=(3, 1), w=-2)
    assert dict(canonicalize(3, 5, xi=(3, 1), w=-2)) == t.data


def test_canonicalize_cubic_numeric():
    # one division step; check by numeric substitution xi=(3,4), w=5
    t = Terms(3)
    for key, c in canonicalize(3, 1, xi=(0, 3)):
        t._accumulate(key, c)
    got = t.evaluate((), (0.0, 0.0), (3.0, 4.0))
    want = (1j * 4.0) ** 3
    assert abs(got - want) < 1e-12


@st.composite
def small_terms(draw, n=3, green=False):
    t = Terms.zero(n)
    for _ in range(draw(st.integers(0, 3))):
        xp = tuple(draw(st.integers(0, 2)) for _ in range(n - 1))
        xi = tuple(draw(st.integers(0, 2)) for _ in range(n - 1))
        w = draw(st.integers(-2, 2))
        xn = draw(st.integers(0, 2))
        yn = draw(st.integers(0, 2)) if green else 0
        c = draw(st.fractions(min_value=-3, max_value=3, max_denominator=4))
        if c:
            t = t + Terms.monomial(n, c, xp=xp, xi=xi, w=w, xn=xn, yn=yn)
    return t


@given(small_terms(), small_terms(), small_terms())
def test_terms_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(small_terms())
def test_canonical_form_is_value_preserving(t):
    # the canonical accumulation never changes numeric values
    pt = dict(jet=(0.7, -0.3), xprime=(0.15, -0.4), xi=(1.2, 0.8), xn=0.3, yn=0.1)
    direct = 0j
    w = math.hypot(*pt["xi"])
    for (xp, xi, wp, q, r), ccoef in t.data.items():
        v = complex(ccoef.eval(pt["jet"]))
        for b, e in zip(pt["xprime"], xp):
            v *= b ** e
        for b, e in zip(pt["xi"], xi):
            v *= (1j * b) ** e
        v *= w ** wp * pt["xn"] ** q * pt["yn"] ** r
        direct += v
    # rebuild through fresh accumulation (forces canonicalization again)
    rebuilt = Terms.zero(3)
    for key, c in t.data.items():
        rebuilt._accumulate(key, c)
    got = rebuilt.evaluate(pt["jet"], pt["xprime"], pt["xi"], pt["xn"], pt["yn"])
    assert abs(got - direct) < 1e-10


# -- derivatives -------------------------------------------------------------


def _fd_xi(sym, j, jet, xprime, xi, xn, h=1e-6):
    """Finite difference of the analytic symbol value in the real xi_j."""

    def val(xi_pt):
        total = 0j
        for g, terms in sym.grades.items():
            total += terms.evaluate(jet, xprime, xi_pt, xn, include_exp=True)
        return total

    up = list(xi)
    dn = list(xi)
    up[j] += h
    dn[j] -= h
    return (val(tuple(up)) - val(tuple(dn))) / (2 * h)


def _poisson_sym(terms_list, n=3, cap=4):
    grades = {}
    for j, t in enumerate(terms_list):
        grades[j] = t
    lead = None
    for j, t in grades.items():
        for key, _ in t:
            d = Terms.key_degree(key)
            lead = d + j
    return BoundarySymbol(POISSON, n, lead if lead is not None else 0, cap, grades)


def test_derive_w_chain_rule():
    # stored derivative of w is -xi_j/w; the analytic D-derivative of |xi'|
    s = BoundarySymbol(PSDO, 3, 1, 2, {0: Terms.monomial(3, 1, w=1)})
    d = derive(s, ("xi", 0))
    assert d.grade(0) == Terms.monomial(3, -1, xi=(1, 0), w=-1)


def test_derive_exponential_product_rule():
    # d/dxn (xn e^{-xn w}) = (1 - xn w) e^{-xn w}
    s = BoundarySymbol(POISSON, 3, -1, 2, {0: Terms.monomial(3, 1, xn=1)})
    d = derive(s, "xn")
    want = Terms.monomial(3, 1) + Terms.monomial(3, -1, w=1, xn=1)
    assert d.grade(0) == want


def test_derive_exponential_frequency():
    # stored D_1 e^{-xn w} = xn xi_1 w^{-1} e^{-xn w}
    s = BoundarySymbol(POISSON, 3, 0, 2, {0: Terms.monomial(3, 1)})
    d = derive(s, ("xi", 0))
    assert d.grade(0) == Terms.monomial(3, 1, xi=(1, 0), w=-1, xn=1)


def test_derive_matches_finite_difference():
    # nontrivial Poisson-type terms, numeric check of the D-derivative;
    # each term sits in its own homogeneous symbol
    t = (
        Terms.monomial(3, Fraction(3, 2), xi=(1, 0), w=-1, xn=1)
        + Terms.monomial(3, 1, xp=(1, 0), w=1)
        + Terms.monomial(3, Fraction(-1, 3), xi=(0, 1), xn=2)
    )
    jet, xprime, xi, xn = (), (0.2, -0.1), (1.0, 2.0), 0.3
    for key, c in t.data.items():
        deg = Terms.key_degree(key)
        s = BoundarySymbol(POISSON, 3, deg, 4, {0: Terms(3, {key: c})})
        d = derive(s, ("xi", 1))
        got = d.grade(0).evaluate(jet, xprime, xi, xn, include_exp=True)
        want = _fd_xi(s, 1, jet, xprime, xi, xn) / 1j  # D = -i d/dxi
        assert abs(got - want) < 1e-6


@given(small_terms(), small_terms())
def test_derive_product_rule_terms(a, b):
    j = 0
    left = (a * b).dxp(j)
    right = a.dxp(j) * b + a * b.dxp(j)
    assert left == right


@given(small_terms(), small_terms())
def test_derive_commutes_with_add(a, b):
    assert (a + b).dxn(True) == a.dxn(True) + b.dxn(True)
    assert (a + b).dxi(1, True) == a.dxi(1, True) + b.dxi(1, True)


# -- integral rule -----------------------------------------------------------


def test_xn_integral_examples():
    one = Terms.monomial(3, 1)
    for q, want_c, want_w in ((0, Fraction(1, 2), -1), (1, Fraction(1, 4), -2),
                              (3, Fraction(3, 8), -4)):
        t = Terms.monomial(3, 1, xn=q)
        out = xn_integral_compose(t, one)
        assert out == Terms.monomial(3, want_c, w=want_w)


def test_xn_integral_against_quadrature():
    from scipy import integrate

    w = 1.7
    q = 3
    val = integrate.quad(lambda x: x ** q * math.exp(-2 * x * w), 0, 80)[0]
    out = xn_integral_compose(Terms.monomial(3, 1, xn=q), Terms.monomial(3, 1))
    got = out.evaluate((), (0, 0), (w, 0.0)).real
    assert abs(got - val) < 1e-12


# -- composition -------------------------------------------------------------


def test_compose_identity_psdo():
    one = BoundarySymbol(PSDO, 3, 0, 4, {0: Terms.monomial(3, 1)})
    out = leibniz_compose(one, one, 2)
    assert out.grade(0) == Terms.monomial(3, 1)
    assert out.grade(1).is_zero() and out.grade(2).is_zero()


def test_compose_psdo_poisson_pointwise():
    s = BoundarySymbol(PSDO, 3, 1, 4, {0: Terms.monomial(3, 1, w=1)})
    k = BoundarySymbol(POISSON, 3, 0, 4, {0: Terms.monomial(3, 1)})
    out = leibniz_compose(k, s, 1)
    assert out.kind == POISSON
    assert out.grade(0) == Terms.monomial(3, 1, w=1)


def test_compose_trace_poisson_integral():
    t = BoundarySymbol(TRACE, 3, 0, 4, {0: Terms.monomial(3, 1)})
    k = BoundarySymbol(POISSON, 3, 0, 4, {0: Terms.monomial(3, 1)})
    out = leibniz_compose(t, k, 0)
    assert out.kind == PSDO
    assert out.grade(0) == Terms.monomial(3, Fraction(1, 2), w=-1)


def test_compose_poisson_trace_green():
    t = BoundarySymbol(TRACE, 3, -1, 4, {0: Terms.monomial(3, 1, xn=1)})
    k = BoundarySymbol(POISSON, 3, 0, 4, {0: Terms.monomial(3, 1)})
    out = leibniz_compose(k, t, 0)
    assert out.kind == GREEN
    assert out.lead_deg == -1
    assert out.grade(0) == Terms.monomial(3, 1, yn=1)


def test_compose_kind_error():
    k = BoundarySymbol(POISSON, 3, 0, 4, {0: Terms.monomial(3, 1)})
    with pytest.raises(KindError):
        leibniz_compose(k, k, 1)


@st.composite
def psdo_symbols(draw, n=3, cap=4):
    grades = {}
    for j in range(draw(st.integers(1, 2))):
        t = Terms.zero(n)
        for _ in range(draw(st.integers(1, 2))):
            xp = tuple(draw(st.integers(0, 1)) for _ in range(n - 1))
            xi = tuple(draw(st.integers(0, 1)) for _ in range(n - 1))
            c = draw(st.fractions(min_value=-2, max_value=2, max_denominator=3))
            if not c:
                continue
            wexp = -j - sum(xi)
            t = t + Terms.monomial(n, c, xp=xp, xi=xi, w=wexp)
        if not t.is_zero():
            grades[j] = t
    grades.setdefault(0, Terms.monomial(n, 1))
    return BoundarySymbol(PSDO, n, 0, cap, grades)


@given(psdo_symbols(), psdo_symbols(), psdo_symbols())
def test_compose_associative_to_truncation(a, b, c):
    depth = 2
    left = leibniz_compose(leibniz_compose(a, b, depth), c, depth)
    right = leibniz_compose(a, leibniz_compose(b, c, depth), depth)
    for j in range(depth + 1):
        lg = left.grade(j).truncate_weight(left.weight_cap - depth)
        rg = right.grade(j).truncate_weight(left.weight_cap - depth)
        assert lg == rg


# -- adjoint -----------------------------------------------------------------


def test_adjoint_center_and_involution(generic3):
    k = generic3
    kstar = adjoint_symbol(k, 3)
    # center leading value: conj(e^{-xn w}) = e^{-xn w}
    assert kstar.center_grade(0) == Terms.monomial(3, 1)
    # adjoint of adjoint: same grades up to the computed depth.  The trace
    # adjoint of a trace symbol has the same formula with the flip undone.
    from bkasym.symbols import _alpha_factorial, _dxi_alpha, _dxp_alpha, _multiindices

    n = 3
    back = {jj: Terms.zero(n) for jj in range(4)}
    conj = {j: g.flip_xi() for j, g in kstar.grades.items()}
    for alpha_idx, order in _multiindices(n - 1, 3):
        fact = Fraction(1, _alpha_factorial(alpha_idx))
        for j, g in conj.items():
            if j + order > 3:
                continue
            piece = _dxp_alpha(_dxi_alpha(g, alpha_idx, True, False), alpha_idx)
            back[j + order] = back[j + order] + piece.scale(fact)
    for j in range(4):
        valid = k.weight_cap - j - 3
        assert (back[j] - k.grade(j)).truncate_weight(valid).is_zero()


def test_adjoint_zero_jet_exact():
    from bkasym.domains import DomainSpec
    from bkasym.poisson import compute_poisson_symbols

    k = compute_poisson_symbols(DomainSpec.halfspace(3), 3, 4)
    kstar = adjoint_symbol(k, 3)
    assert kstar.grade(0) == Terms.monomial(3, 1)
    for j in range(1, 4):
        assert kstar.grade(j).is_zero()


# -- homogeneity and serialization -------------------------------------------


def test_homogeneity_scaling(generic3):
    k = generic3
    jet = (0.37, -0.21, 0.11)
    xprime = (0.0, 0.0)
    xi = (0.6, 1.1)
    xn = 0.8
    for lam in (2.0, 3.0):
        for j, terms in k.grades.items():
            v1 = terms.evaluate(jet, xprime, tuple(lam * c for c in xi), xn / lam)
            v0 = terms.evaluate(jet, xprime, xi, xn)
            assert abs(v1 - lam ** (-j) * v0) < 1e-9 * max(1.0, abs(v0))


def test_symbol_json_round_trip(generic3):
    k = generic3
    back = BoundarySymbol.from_json(k.to_json())
    assert back == k
    assert back.dumps() == k.dumps()


def test_green_symbol_json_round_trip(chain3):
    _, _, _, g = chain3
    back = BoundarySymbol.from_json(g.to_json())
    assert back == g


def test_reciprocal():
    t = Terms.monomial(3, Fraction(1, 2), w=-1) + Terms.monomial(
        3, Fraction(1, 3), xp=(1, 0), xi=(1, 0), w=-2
    )
    inv = terms_reciprocal(t, 3)
    prod = (t * inv).truncate_weight(3)
    assert prod == Terms.monomial(3, 1)
