"""Graded term ring for boundary symbols and their composition calculus.

A term is a jet-polynomial coefficient times a monomial

    x'^beta * xi^gamma * w^p * xn^q * yn^r

subject to the quotient relation  xi_1^2 + ... + xi_{n-1}^2 = -w^2, which is
canonicalized by eliminating xi_{n-1}^2.  Poisson/trace/Green terms carry an
implicit decay factor exp(-(xn+yn)*w) that is never stored.

Convention for the frequency variables (important): the stored variable
xi_j denotes i times the real Fourier covariable, so that all coefficients
stay rational.  Under this convention the composition-calculus derivative
D_j = -i*d/d(xi_real_j) becomes the plain stored derivative d/d(xi_j),
complex conjugation of a symbol becomes the sign flip xi -> -xi, and
w = |xi'| is unchanged.  Numeric evaluation substitutes xi_j = 1j * (real
frequency component j).
"""

import json
import math
from fractions import Fraction

from .jets import JetPoly

POISSON = "poisson"
TRACE = "trace"
PSDO = "psdo"
GREEN = "green"

_KINDS = (POISSON, TRACE, PSDO, GREEN)

# kinds whose terms carry the implicit exp(-(xn+yn)w) factor
_EXP_KINDS = (POISSON, TRACE, GREEN)


class KindError(ValueError):
    """Raised on an operator composition the calculus does not define."""


class TruncationError(ValueError):
    """Raised when a symbol is not truncated finely enough for a request."""


def _fr(x):
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# term collections


class Terms:
    """A finite sum of terms over a fixed dimension n.

    data maps (xp, xi, w, xn, yn) -> JetPoly.  All entries are kept in
    canonical form (xi[-1] <= 1) with no zero coefficients.
    """

    __slots__ = ("n", "data")

    def __init__(self, n, data=None):
        self.n = n
        self.data = data if data is not None else {}

    # -- construction -----------------------------------------------------

    @staticmethod
    def zero(n):
        return Terms(n)

    @staticmethod
    def monomial(n, coeff=1, xp=None, xi=None, w=0, xn=0, yn=0):
        m = n - 1
        key = (
            tuple(xp) if xp is not None else (0,) * m,
            tuple(xi) if xi is not None else (0,) * m,
            w,
            xn,
            yn,
        )
        if not isinstance(coeff, JetPoly):
            coeff = JetPoly.const(coeff)
        t = Terms(n)
        t._accumulate(key, coeff)
        return t

    def copy(self):
        return Terms(self.n, dict(self.data))

    def is_zero(self):
        return not self.data

    def __bool__(self):
        return bool(self.data)

    def __eq__(self, other):
        return self.n == other.n and self.data == other.data

    def __iter__(self):
        return iter(self.data.items())

    def __len__(self):
        return len(self.data)

    # -- canonical accumulation -------------------------------------------

    def _accumulate(self, key, coeff):
        """Add coeff * monomial(key), reducing xi[-1]^2 -> -w^2 - sum xi_j^2."""
        if coeff.is_zero():
            return
        xp, xi, w, xn, yn = key
        if xi[-1] >= 2:
            m = self.n - 1
            base = list(xi)
            base[-1] -= 2
            # xi_last^2 = -w^2 - xi_1^2 - ... - xi_{m-1}^2
            self._accumulate((xp, tuple(base), w + 2, xn, yn), -coeff)
            for j in range(m - 1):
                bumped = list(base)
                bumped[j] += 2
                self._accumulate((xp, tuple(bumped), w, xn, yn), -coeff)
            return
        cur = self.data.get(key)
        s = coeff if cur is None else cur + coeff
        if s.is_zero():
            self.data.pop(key, None)
        else:
            self.data[key] = s

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        out = self.copy()
        for key, c in other.data.items():
            out._accumulate(key, c)
        return out

    def __neg__(self):
        return Terms(self.n, {k: -c for k, c in self.data.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return self.mul_capped(other, None)

    def mul_capped(self, other, cap):
        """Product, discarding terms of x'-weight above cap along the way."""
        out = Terms(self.n)
        left = sorted(
            ((sum(k[0]), k, c) for k, c in self.data.items()), key=lambda t: t[0]
        )
        right = sorted(
            ((sum(k[0]), k, c) for k, c in other.data.items()), key=lambda t: t[0]
        )
        for w1sum, (xp1, xi1, w1, q1, r1), c1 in left:
            for w2sum, (xp2, xi2, w2, q2, r2), c2 in right:
                if cap is not None and w1sum + w2sum > cap:
                    break
                key = (
                    tuple(a + b for a, b in zip(xp1, xp2)),
                    tuple(a + b for a, b in zip(xi1, xi2)),
                    w1 + w2,
                    q1 + q2,
                    r1 + r2,
                )
                out._accumulate(key, c1 * c2)
        return out

    def scale(self, c):
        if isinstance(c, JetPoly):
            if c.is_zero():
                return Terms(self.n)
            out = Terms(self.n)
            for key, v in self.data.items():
                out._accumulate(key, v * c)
            return out
        c = _fr(c)
        if not c:
            return Terms(self.n)
        return Terms(self.n, {k: v.scale(c) for k, v in self.data.items()})

    # -- structure queries --------------------------------------------------

    @staticmethod
    def key_weight(key):
        return sum(key[0])

    @staticmethod
    def key_degree(key):
        """Homogeneity degree under xn,yn -> /lambda, xi,w -> *lambda."""
        _, xi, w, xn, yn = key
        return sum(xi) + w - xn - yn

    def weight_part(self, delta):
        return Terms(self.n, {k: c for k, c in self.data.items() if sum(k[0]) == delta})

    def truncate_weight(self, cap):
        return Terms(self.n, {k: c for k, c in self.data.items() if sum(k[0]) <= cap})

    def max_weight(self):
        return max((sum(k[0]) for k in self.data), default=0)

    def max_xn(self):
        return max((k[3] for k in self.data), default=0)

    def xn_degrees(self):
        return sorted({k[3] for k in self.data})

    def center_part(self):
        """Terms with no x' factors."""
        m = self.n - 1
        zero = (0,) * m
        return Terms(self.n, {k: c for k, c in self.data.items() if k[0] == zero})

    def is_radial_center(self):
        """True if the x'-free part has no leftover xi monomials."""
        m = self.n - 1
        zero = (0,) * m
        return all(k[1] == zero for k in self.data if k[0] == zero)

    def subs_xn_zero(self):
        return Terms(self.n, {k: c for k, c in self.data.items() if k[3] == 0})

    def flip_xi(self):
        """xi -> -xi; this is complex conjugation in the stored convention."""
        out = Terms(self.n)
        for (xp, xi, w, q, r), c in self.data.items():
            sgn = -1 if sum(xi) % 2 else 1
            out._accumulate((xp, xi, w, q, r), c if sgn > 0 else -c)
        return out

    def swap_xn_yn(self):
        out = Terms(self.n)
        for (xp, xi, w, q, r), c in self.data.items():
            out._accumulate((xp, xi, w, r, q), c)
        return out

    def rename_xn_to_yn(self):
        out = Terms(self.n)
        for (xp, xi, w, q, r), c in self.data.items():
            if r:
                raise ValueError("term already involves yn")
            out._accumulate((xp, xi, w, 0, q), c)
        return out

    # -- derivatives --------------------------------------------------------

    def dxp(self, j):
        out = Terms(self.n)
        for (xp, xi, w, q, r), c in self.data.items():
            if xp[j]:
                nxp = list(xp)
                nxp[j] -= 1
                out._accumulate((tuple(nxp), xi, w, q, r), c.scale(xp[j]))
        return out

    def dxi(self, j, has_exp, green=False):
        """Stored-variable frequency derivative (equals D_j on real symbols).

        d(xi_j)/d = gamma_j / xi_j piece, the w-chain piece
        d w/d xi_j = -xi_j / w, and, when the implicit exponential is
        present, the piece +(xn+yn) * xi_j / w coming from exp(-(xn+yn)w).
        """
        out = Terms(self.n)
        for (xp, xi, w, q, r), c in self.data.items():
            if xi[j]:
                nxi = list(xi)
                nxi[j] -= 1
                out._accumulate((xp, tuple(nxi), w, q, r), c.scale(xi[j]))
            if w:
                nxi = list(xi)
                nxi[j] += 1
                out._accumulate((xp, tuple(nxi), w - 2, q, r), c.scale(-w))
            if has_exp:
                nxi = list(xi)
                nxi[j] += 1
                out._accumulate((xp, tuple(nxi), w - 1, q + 1, r), c)
                if green:
                    out._accumulate((xp, tuple(nxi), w - 1, q, r + 1), c)
        return out

    def dxn(self, has_exp):
        out = Terms(self.n)
        for (xp, xi, w, q, r), c in self.data.items():
            if q:
                out._accumulate((xp, xi, w, q - 1, r), c.scale(q))
            if has_exp:
                out._accumulate((xp, xi, w + 1, q, r), -c)
        return out

    def dyn(self, has_exp):
        out = Terms(self.n)
        for (xp, xi, w, q, r), c in self.data.items():
            if r:
                out._accumulate((xp, xi, w, q, r - 1), c.scale(r))
            if has_exp:
                out._accumulate((xp, xi, w + 1, q, r), -c)
        return out

    # -- numeric evaluation --------------------------------------------------

    def evaluate(self, jet, xprime, xi, xn=0.0, yn=0.0, include_exp=False):
        """Complex value at a numeric point.

        xi is the tuple of *real* frequency components; the stored variables
        are substituted as 1j * xi_j, and w = |xi|.
        """
        w = math.sqrt(sum(v * v for v in xi))
        total = 0j
        for (xp, xig, wp, q, r), c in self.data.items():
            val = complex(c.eval(jet))
            for b, e in zip(xprime, xp):
                if e:
                    val *= b ** e
            for b, e in zip(xi, xig):
                if e:
                    val *= (1j * b) ** e
            if wp:
                val *= w ** wp
            if q:
                val *= xn ** q
            if r:
                val *= yn ** r
            total += val
        if include_exp:
            total *= math.exp(-(xn + yn) * w)
        return total

    # -- display -------------------------------------------------------------

    def sorted_items(self):
        return sorted(self.data.items(), key=lambda kv: kv[0])

    def __str__(self):
        if not self.data:
            return "0"
        out = []
        for (xp, xi, w, q, r), c in self.sorted_items():
            factors = []
            for i, e in enumerate(xp):
                if e:
                    factors.append(f"x{i + 1}" + (f"^{e}" if e > 1 else ""))
            for i, e in enumerate(xi):
                if e:
                    factors.append(f"xi{i + 1}" + (f"^{e}" if e > 1 else ""))
            if w:
                factors.append(f"w^{w}" if w != 1 else "w")
            if q:
                factors.append(f"xn^{q}" if q > 1 else "xn")
            if r:
                factors.append(f"yn^{r}" if r > 1 else "yn")
            mono = "*".join(factors) if factors else "1"
            out.append(f"({c})*{mono}")
        return " + ".join(out)

    __repr__ = __str__


def canonicalize(n, coeff=1, xp=None, xi=None, w=0, xn=0, yn=0):
    """Canonical form of a single monomial as a list of reduced terms.

    The defining relation xi_1^2 + ... + xi_{n-1}^2 = -w^2 (stored-variable
    form of |xi'|^2 = w^2) is applied until the last frequency exponent is
    at most 1.  Returns the (key, coeff) pairs of the result.
    """
    t = Terms.monomial(n, coeff, xp, xi, w, xn, yn)
    return t.sorted_items()


# ---------------------------------------------------------------------------
# graded symbols


class BoundarySymbol:
    """Truncated polyhomogeneous boundary symbol.

    grades[j] holds the terms of homogeneity degree lead_deg - j, where the
    degree of a term is (total xi exponent) + (w exponent) - xn - yn.

    Truncation is graded: grade j is exact (and stored) through x'-weight
    weight_cap - j.  This is the invariant preserved by the composition
    calculus: every grade step spent in a composition sum costs at most one
    x'-derivative on the factors.
    """

    __slots__ = ("kind", "n", "lead_deg", "weight_cap", "grades")

    def __init__(self, kind, n, lead_deg, weight_cap, grades, check=True):
        if kind not in _KINDS:
            raise KindError(f"unknown symbol kind {kind!r}")
        self.kind = kind
        self.n = n
        self.lead_deg = lead_deg
        self.weight_cap = weight_cap
        self.grades = {
            j: g.truncate_weight(weight_cap - j)
            for j, g in grades.items()
            if not g.is_zero()
        }
        self.grades = {j: g for j, g in self.grades.items() if not g.is_zero()}
        if check:
            self._validate()

    def _validate(self):
        for j, terms in self.grades.items():
            for key, _ in terms:
                xp, xi, w, xn, yn = key
                if self.kind == PSDO and (xn or yn):
                    raise ValueError("psdo term with normal-variable factor")
                if self.kind in (POISSON, TRACE) and yn:
                    raise ValueError(f"{self.kind} term with yn factor")
                if Terms.key_degree(key) != self.lead_deg - j:
                    raise ValueError(
                        f"term {key} in grade {j} violates homogeneity "
                        f"{self.lead_deg - j}"
                    )

    @property
    def has_exp(self):
        return self.kind in _EXP_KINDS

    def grade(self, j):
        return self.grades.get(j, Terms.zero(self.n))

    def nsteps(self):
        return max(self.grades, default=-1)

    def center_grade(self, j):
        return self.grade(j).center_part()

    def truncated(self, cap):
        """Weaken the graded truncation to a smaller cap."""
        return BoundarySymbol(
            self.kind,
            self.n,
            self.lead_deg,
            cap,
            {j: g.truncate_weight(cap - j) for j, g in self.grades.items()},
            check=False,
        )

    def __add__(self, other):
        if (self.kind, self.n, self.lead_deg) != (other.kind, other.n, other.lead_deg):
            raise ValueError("incompatible symbols")
        grades = dict(self.grades)
        for j, g in other.grades.items():
            grades[j] = grades.get(j, Terms.zero(self.n)) + g
        return BoundarySymbol(
            self.kind,
            self.n,
            self.lead_deg,
            min(self.weight_cap, other.weight_cap),
            grades,
            check=False,
        )

    def __eq__(self, other):
        return (
            self.kind == other.kind
            and self.n == other.n
            and self.lead_deg == other.lead_deg
            and self.grades == other.grades
        )

    def evaluate_grade(self, j, jet, xprime, xi, xn=0.0, yn=0.0, include_exp=False):
        return self.grade(j).evaluate(jet, xprime, xi, xn, yn, include_exp)

    # -- serialization -----------------------------------------------------

    def to_json(self):
        grades = []
        for j in sorted(self.grades):
            terms = []
            for (xp, xi, w, xn, yn), c in self.grades[j].sorted_items():
                terms.append(
                    {
                        "coeff": c.to_json(),
                        "xp": list(xp),
                        "xi": list(xi),
                        "w": w,
                        "xn": xn,
                        "yn": yn,
                    }
                )
            grades.append({"j": j, "terms": terms})
        return {
            "kind": self.kind,
            "n": self.n,
            "lead_degree": self.lead_deg,
            "weight_cap": self.weight_cap,
            "xi_convention": "i-absorbed",
            "grades": grades,
        }

    @staticmethod
    def from_json(obj):
        n = obj["n"]
        grades = {}
        for g in obj["grades"]:
            t = Terms(n)
            for rec in g["terms"]:
                t._accumulate(
                    (
                        tuple(rec["xp"]),
                        tuple(rec["xi"]),
                        rec["w"],
                        rec["xn"],
                        rec["yn"],
                    ),
                    JetPoly.from_json(rec["coeff"]),
                )
            grades[g["j"]] = t
        return BoundarySymbol(
            obj["kind"], n, obj["lead_degree"], obj["weight_cap"], grades
        )

    def dumps(self):
        return json.dumps(self.to_json(), separators=(",", ":"))

    def __str__(self):
        lines = [
            f"{self.kind} symbol, n={self.n}, lead degree {self.lead_deg}, "
            f"weight cap {self.weight_cap}"
        ]
        for j in sorted(self.grades):
            lines.append(f"  grade {j} (degree {self.lead_deg - j}): {self.grades[j]}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# calculus operations


def gamma0(sym):
    """Boundary restriction of a Poisson symbol: the psdo with symbol value
    at xn = 0 (the class-one trace composition rule)."""
    if sym.kind != POISSON:
        raise KindError("gamma0 expects a Poisson symbol")
    grades = {j: g.subs_xn_zero() for j, g in sym.grades.items()}
    return BoundarySymbol(PSDO, sym.n, sym.lead_deg, sym.weight_cap, grades)


def derive(sym, var):
    """Exact derivative of a boundary symbol.

    var is ("xp", j) or ("xi", j) with 0 <= j < n-1, or "xn" / "yn".
    Frequency derivatives follow the stored i-absorbed convention (they
    implement D_j), include the chain rule through w and through the
    implicit exponential, and shift the grading down by one degree.
    """
    n = sym.n
    if isinstance(var, tuple):
        kind_v, j = var
        if not 0 <= j < n - 1:
            raise ValueError("primed variable index out of range")
        if kind_v == "xp":
            grades = {j0: g.dxp(j) for j0, g in sym.grades.items()}
            return BoundarySymbol(
                sym.kind, n, sym.lead_deg, max(sym.weight_cap - 1, 0), grades
            )
        if kind_v == "xi":
            grades = {
                j0: g.dxi(j, sym.has_exp, green=sym.kind == GREEN)
                for j0, g in sym.grades.items()
            }
            return BoundarySymbol(
                sym.kind, n, sym.lead_deg - 1, sym.weight_cap, grades
            )
        raise ValueError(f"unknown variable {var!r}")
    if var == "xn":
        if sym.kind == PSDO:
            raise ValueError("psdo symbols do not depend on xn")
        grades = {j0: g.dxn(sym.has_exp) for j0, g in sym.grades.items()}
        return BoundarySymbol(sym.kind, n, sym.lead_deg + 1, sym.weight_cap, grades)
    if var == "yn":
        if sym.kind != GREEN:
            raise ValueError("only Green symbols depend on yn")
        grades = {j0: g.dyn(True) for j0, g in sym.grades.items()}
        return BoundarySymbol(sym.kind, n, sym.lead_deg + 1, sym.weight_cap, grades)
    raise ValueError(f"unknown variable {var!r}")


def _multiindices(m, max_order):
    """All alpha in N^m with |alpha| <= max_order, with |alpha| attached."""
    out = [((0,) * m, 0)]
    frontier = [(0,) * m]
    for order in range(1, max_order + 1):
        nxt = set()
        for a in frontier:
            for j in range(m):
                b = list(a)
                b[j] += 1
                nxt.add(tuple(b))
        frontier = sorted(nxt)
        out.extend((a, order) for a in frontier)
    return out


def _alpha_factorial(alpha):
    f = 1
    for e in alpha:
        f *= math.factorial(e)
    return f


def _dxi_alpha(terms, alpha, has_exp, green):
    for j, e in enumerate(alpha):
        for _ in range(e):
            terms = terms.dxi(j, has_exp, green)
    return terms


def _dxp_alpha(terms, alpha):
    for j, e in enumerate(alpha):
        for _ in range(e):
            terms = terms.dxp(j)
    return terms


def xn_integral_compose(trace_terms, poisson_terms, alpha=None, cap=None):
    """Integrate the product of a trace and a Poisson term sum over xn > 0.

    Both factors carry the implicit exp(-xn*w), so the combined exponential
    is exp(-2*xn*w) and termwise  int_0^inf xn^q exp(-2 xn w) dxn
    = q! / (2w)^(q+1).

    With a rational weight exponent alpha the rule becomes
    Gamma(alpha+q+1) / (2w)^(alpha+q+1); the returned terms carry only the
    rational factor (alpha+1)_q / (2w)^(q+1), with the common transcendental
    prefactor Gamma(alpha+1) * (2w)^(-alpha) left to the caller's metadata.
    """
    n = trace_terms.n
    prod = trace_terms.mul_capped(poisson_terms, cap)
    out = Terms(n)
    for (xp, xi, w, q, r), c in prod.data.items():
        if r:
            raise ValueError("yn factor inside an xn integral")
        if alpha is None:
            factor = Fraction(math.factorial(q), 2 ** (q + 1))
        else:
            rising = Fraction(1)
            for i in range(1, q + 1):
                rising *= alpha + i
            factor = rising / 2 ** (q + 1)
        out._accumulate((xp, xi, w - q - 1, 0, 0), c.scale(factor))
    return out


# composition tables: (kind_a, kind_b) -> (result kind, degree offset)
_COMPOSE_RULES = {
    (PSDO, PSDO): (PSDO, 0),
    (TRACE, POISSON): (PSDO, -1),
    (POISSON, PSDO): (POISSON, 0),
    (PSDO, TRACE): (TRACE, 0),
    (POISSON, TRACE): (GREEN, 0),
}


def _circ_n(kind_a, kind_b, ta, tb, alpha=None, cap=None):
    """The normal-variable part of the composition of two term sums."""
    if (kind_a, kind_b) == (TRACE, POISSON):
        return xn_integral_compose(ta, tb, alpha=alpha, cap=cap)
    if (kind_a, kind_b) == (POISSON, TRACE):
        return ta.mul_capped(tb.rename_xn_to_yn(), cap)
    # remaining sanctioned cases are plain products
    return ta.mul_capped(tb, cap)


def leibniz_compose(a, b, depth, alpha=None):
    """Symbol of the operator product A*B through `depth` grade steps.

    Implements  c ~ sum_alpha (1/alpha!) (D^alpha a) o_n (d_x'^alpha b)
    with the normal-variable rule o_n dictated by the operator kinds.
    alpha (a Fraction) activates the weighted trace/Poisson integral.

    The graded truncation cap of the result is the minimum of the input
    caps: output grade m at x'-weight delta only ever consumes input
    grade j at weight delta + (m - j) or less.
    """
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    rule = _COMPOSE_RULES.get((a.kind, b.kind))
    if rule is None:
        raise KindError(f"composition {a.kind} o {b.kind} is not defined")
    out_kind, offset = rule
    n = a.n
    cap = min(a.weight_cap, b.weight_cap)
    if cap < depth:
        raise TruncationError(
            f"graded caps {a.weight_cap},{b.weight_cap} too small for depth {depth}"
        )
    lead = a.lead_deg + b.lead_deg + offset
    grades = {jj: Terms.zero(n) for jj in range(depth + 1)}
    for alpha_idx, order in _multiindices(n - 1, depth):
        fact = Fraction(1, _alpha_factorial(alpha_idx))
        da = {
            ja: _dxi_alpha(ga, alpha_idx, a.has_exp, a.kind == GREEN)
            for ja, ga in a.grades.items()
            if ja + order <= depth
        }
        db = {
            jb: _dxp_alpha(gb, alpha_idx)
            for jb, gb in b.grades.items()
            if jb + order <= depth
        }
        for ja, ga in da.items():
            if ga.is_zero():
                continue
            for jb, gb in db.items():
                step = ja + jb + order
                if step > depth or gb.is_zero():
                    continue
                piece = _circ_n(
                    a.kind, b.kind, ga, gb, alpha=alpha, cap=cap - step
                )
                grades[step] = grades[step] + piece.scale(fact)
    return BoundarySymbol(out_kind, n, lead, cap, grades)


def adjoint_symbol(k, depth):
    """Trace symbol of the adjoint of a Poisson operator.

    k* ~ sum_alpha (1/alpha!) D^alpha d_x'^alpha conj(k); conjugation is the
    xi sign flip in the stored convention.  The graded cap is preserved.
    """
    if k.kind != POISSON:
        raise KindError("adjoint_symbol expects a Poisson symbol")
    if k.weight_cap < depth:
        raise TruncationError(
            f"adjoint to depth {depth} needs graded cap >= {depth}"
        )
    n = k.n
    grades = {jj: Terms.zero(n) for jj in range(depth + 1)}
    conj = {j: g.flip_xi() for j, g in k.grades.items()}
    for alpha_idx, order in _multiindices(n - 1, depth):
        fact = Fraction(1, _alpha_factorial(alpha_idx))
        for j, g in conj.items():
            step = j + order
            if step > depth:
                continue
            piece = _dxp_alpha(_dxi_alpha(g, alpha_idx, True, False), alpha_idx)
            grades[step] = grades[step] + piece.scale(fact)
    return BoundarySymbol(TRACE, n, k.lead_deg, k.weight_cap, grades)


def terms_reciprocal(t, weight_cap):
    """1/t as a truncated x'-series.

    Requires the weight-0 part of t to be a single monomial c * w^p (this is
    the elliptic-leading-part situation in which the series exists).
    """
    n = t.n
    head = t.weight_part(0)
    if len(head.data) != 1:
        raise ValueError("weight-0 part is not a single monomial")
    (key, coeff), = head.data.items()
    xp0, xi0, w0, q0, r0 = key
    if any(xi0) or q0 or r0:
        raise ValueError("weight-0 part is not a pure w monomial")
    if len(coeff.terms) != 1 or any(next(iter(coeff.terms))):
        raise ValueError("weight-0 coefficient must be a rational constant")
    (jkey, jval), = coeff.terms.items()
    inv_head = Terms.monomial(n, JetPoly.const(1 / jval), w=-w0)
    rest = (t - head).truncate_weight(weight_cap)
    # 1/t = inv_head * 1/(1 + inv_head*rest) = inv_head * sum (-inv_head*rest)^m
    u = inv_head * rest
    acc = Terms.monomial(n, 1)
    power = Terms.monomial(n, 1)
    for _ in range(weight_cap):
        power = (-u * power).truncate_weight(weight_cap)
        if power.is_zero():
            break
        acc = acc + power
    return (inv_head * acc).truncate_weight(weight_cap)
