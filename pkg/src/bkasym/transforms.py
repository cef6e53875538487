"""Radial inverse Fourier transforms of symbol grades, with log bookkeeping.

The center values of our symbols are sums of terms  xn^q yn^r w^p e^(-T w)
with T = xn (potential case) or T = xn + yn (Green case).  Their inverse
Fourier transforms over the (n-1)-dimensional frequency space are, modulo
smooth functions, explicit closed forms generated from the base transform

    IFT[e^(-T w)](x') = c_n * T / (T^2 + |x'|^2)^(n/2),   c_n = Gamma(n/2)/pi^(n/2)

by the two ladder moves: multiplication by w is -d/dT, division by w is the
T-antiderivative normalized to decay where the tail integral converges, and
producing lattice log terms where it does not.

Everything here is exact: the engine works in the function algebra spanned
by  T^a r^b rho^c  times one of {1, ln rho, ln(T+rho), arctan(T/r),
arctan(r/T)}, with rational coefficients (rho^2 = T^2 + r^2).  The reported
expansions keep a single implicit factor c_n, so their stored coefficients
stay rational.
"""

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .jets import JetPoly

PLAIN, LNRHO, LNTPR, ATAN, ACOT = 0, 1, 2, 3, 4
_MAX_BYPARTS_DEPTH = 6


class TransformError(ValueError):
    pass


# ---------------------------------------------------------------------------
# the exact atom algebra


def _acc(d, key, val):
    s = d.get(key, 0) + val
    if s:
        d[key] = s
    else:
        d.pop(key, None)


def _scale(atoms, c):
    c = Fraction(c)
    return {k: v * c for k, v in atoms.items()} if c else {}


def _add(a, b):
    out = dict(a)
    for k, v in b.items():
        _acc(out, k, v)
    return out


def _mono_mul(atoms, a, b, c, coeff=1):
    """Multiply every atom by coeff * T^a r^b rho^c."""
    out = {}
    for (a0, b0, c0, kind), v in atoms.items():
        _acc(out, (a0 + a, b0 + b, c0 + c, kind), v * coeff)
    return out


def deriv_T(atoms):
    out = {}
    for (a, b, c, kind), v in atoms.items():
        if a:
            _acc(out, (a - 1, b, c, kind), v * a)
        if c:
            _acc(out, (a + 1, b, c - 2, kind), v * c)
        if kind == LNRHO:
            _acc(out, (a + 1, b, c - 2, PLAIN), v)
        elif kind == LNTPR:
            _acc(out, (a, b, c - 1, PLAIN), v)
        elif kind == ATAN:
            _acc(out, (a, b + 1, c - 2, PLAIN), v)
        elif kind == ACOT:
            _acc(out, (a, b + 1, c - 2, PLAIN), -v)
    return out


def _int_rho_power(c):
    """Antiderivative in T of rho^c as an atom dict."""
    if c == 0:
        return {(1, 0, 0, PLAIN): Fraction(1)}
    if c == -1:
        return {(0, 0, 0, LNTPR): Fraction(1)}
    if c == -2:
        return {(0, -1, 0, ATAN): Fraction(1)}
    if c > 0:
        # int rho^c = (T rho^c + c r^2 int rho^(c-2)) / (c+1)
        rec = _int_rho_power(c - 2)
        out = _mono_mul(rec, 0, 2, 0, Fraction(c, c + 1))
        _acc(out, (1, 0, c, PLAIN), Fraction(1, c + 1))
        return out
    # c <= -3: int rho^c = ((1+c') int rho^(c') - T rho^(c')) / (c' r^2), c' = c+2
    cp = c + 2
    rec = _int_rho_power(cp)
    out = _mono_mul(rec, 0, -2, 0, Fraction(1 + cp, cp))
    _acc(out, (1, -2, cp, PLAIN), Fraction(-1, cp))
    return out


def _int_plain(a, c):
    """Antiderivative in T of T^a rho^c."""
    if a == 0:
        return _int_rho_power(c)
    if a == 1:
        if c == -2:
            return {(0, 0, 0, LNRHO): Fraction(1)}
        return {(0, 0, c + 2, PLAIN): Fraction(1, c + 2)}
    if a + 1 + c == 0:
        # T^2 = rho^2 - r^2 splits the integrand
        out = _int_plain(a - 2, c + 2)
        return _add(out, _mono_mul(_int_plain(a - 2, c), 0, 2, 0, -1))
    out = {(a - 1, 0, c + 2, PLAIN): Fraction(1, a + 1 + c)}
    if a >= 2:
        rec = _int_plain(a - 2, c)
        out = _add(out, _mono_mul(rec, 0, 2, 0, Fraction(-(a - 1), a + 1 + c)))
    return out


def antideriv_T(atoms, _depth=0):
    """Exact T-antiderivative within the atom algebra."""
    if _depth > _MAX_BYPARTS_DEPTH:
        raise TransformError("antiderivative recursion too deep for this input")
    out = {}
    for (a, b, c, kind), v in atoms.items():
        base = _mono_mul(_int_plain(a, c), 0, b, 0, v)
        if kind == PLAIN:
            out = _add(out, base)
            continue
        # by parts: int u L = (int u) L - int (int u) L'
        if kind == LNRHO:
            da, db, dc, sgn = 1, 0, -2, 1
        elif kind == LNTPR:
            da, db, dc, sgn = 0, 0, -1, 1
        elif kind == ATAN:
            da, db, dc, sgn = 0, 1, -2, 1
        else:  # ACOT
            da, db, dc, sgn = 0, 1, -2, -1
        first = {
            (ka, kb, kc, kind): vv
            for (ka, kb, kc, kk), vv in base.items()
            if kk == PLAIN
        }
        if len(first) != len(base):
            raise TransformError("nested transcendental antiderivative")
        correction = antideriv_T(_mono_mul(base, da, db, dc, sgn), _depth + 1)
        out = _add(out, first)
        out = _add(out, _scale(correction, -1))
    return out


def atoms_value(atoms, T, r):
    """Float value of an atom sum (without the implicit c_n factor)."""
    rho = math.hypot(T, r)
    total = 0.0
    for (a, b, c, kind), v in atoms.items():
        x = float(v) * T ** a * r ** b * rho ** c
        if kind == LNRHO:
            x *= math.log(rho)
        elif kind == LNTPR:
            x *= math.log(T + rho)
        elif kind == ATAN:
            x *= math.atan2(T, r)
        elif kind == ACOT:
            x *= math.atan2(r, T)
        total += x
    return total


def _binom_half(c, m):
    """Binomial coefficient C(c/2, m) as an exact Fraction."""
    out = Fraction(1)
    for i in range(m):
        out *= (Fraction(c, 2) - i) / (i + 1)
    return out


def _normalize_decay(cand):
    """Adjust an antiderivative by constants (in T) so it decays at infinity.

    arctan(T/r) atoms are first rewritten as -arctan(r/T) modulo a constant
    in T (absorbed into the normalization); arctan(r/T) then decays.  The
    surviving sum is expanded asymptotically in 1/T (exactly, via
    rho^c = T^c (1+r^2/T^2)^(c/2)): all positive T powers must cancel, and
    the T^0 coefficient is the constant to subtract.  Log atoms have no
    decaying normalization and must have cancelled identically before.
    """
    fixed = {}
    for (a, b, c, kind), v in cand.items():
        if kind == ATAN:
            _acc(fixed, (a, b, c, ACOT), -v)
        else:
            _acc(fixed, (a, b, c, kind), v)
    grow = {}  # (T power >= 0, r power) -> coefficient
    for (a, b, c, kind), v in fixed.items():
        if kind in (LNRHO, LNTPR):
            raise TransformError("logarithmic tail in convergent regime")
        if kind == PLAIN:
            m = 0
            while a + c - 2 * m >= 0:
                _acc(grow, (a + c - 2 * m, b + 2 * m), v * _binom_half(c, m))
                m += 1
        elif kind == ACOT:
            # arctan(r/T) = sum_m (-1)^m r^(2m+1) / ((2m+1) T^(2m+1))
            m2 = 0
            while a + c - 2 * m2 - 1 >= 0:
                m = 0
                while a + c - 2 * m - 2 * m2 - 1 >= 0:
                    _acc(
                        grow,
                        (a + c - 2 * m - 2 * m2 - 1, b + 2 * m + 2 * m2 + 1),
                        v * _binom_half(c, m) * Fraction((-1) ** m2, 2 * m2 + 1),
                    )
                    m += 1
                m2 += 1
    const = {}
    for (tp, rp), v in grow.items():
        if tp > 0:
            raise TransformError("growing tail in convergent regime")
        _acc(const, (0, rp, 0, PLAIN), -v)
    return _add(fixed, const)


@lru_cache(maxsize=None)
def radial_profile(p, n):
    """Atoms of IFT[w^p e^(-Tw)] / c_n over R^(n-1), modulo smooth.

    For p > 1-n this is the honest decaying transform; for p <= 1-n it is
    one concrete antiderivative: the sublattice powers and all log parts it
    carries are exact, the plain lattice parts hold modulo smooth terms.
    """
    if n < 2:
        raise TransformError("dimension must be >= 2")
    if p == 0:
        return {(1, 0, -n, PLAIN): Fraction(1)}
    if p > 0:
        return _scale(deriv_T(radial_profile(p - 1, n)), -1)
    upper = radial_profile(p + 1, n)
    cand = _scale(antideriv_T(upper), -1)
    if p > 1 - n:
        return _normalize_decay(cand)
    return cand


# ---------------------------------------------------------------------------
# conversion to reported expansions: polynomial-in-t profiles


def _poly_mul(p1, p2):
    out = {}
    for e1, c1 in p1.items():
        for e2, c2 in p2.items():
            _acc(out, e1 + e2, c1 * c2)
    return out


def _poly_one_minus_t2_power(m):
    out = {0: Fraction(1)}
    base = {0: Fraction(1), 2: Fraction(-1)}
    for _ in range(m):
        out = _poly_mul(out, base)
    return out


def _poly_divide_by_one_minus_t2(p):
    """Divide by (1 - t^2); returns the quotient or None if not divisible."""
    work = dict(p)
    out = {}
    while work:
        d = max(work)
        if d < 2:
            return None  # nonzero remainder of degree <= 1
        qc = -work[d]  # leading divisor coefficient is -1 (of t^2)
        _acc(out, d - 2, qc)
        _acc(work, d, qc)
        _acc(work, d - 2, -qc)
    return out


@dataclass
class KernelTerm:
    """One reported term: coeff(t) * rho^power * (log rho if log).

    coeff maps (tx_exp, ty_exp) -> JetPoly; potential-type and boundary
    expansions only use ty_exp = 0.  All coefficients carry a single
    implicit factor c_n = Gamma(n/2) / pi^(n/2).
    """

    power: int
    log: bool
    coeff: dict


@dataclass
class KernelExpansion:
    """Kernel expansion modulo smooth functions at the chart center.

    variant: "poisson" (radial variable |x|, t = xn/|x|), "green"
    (radial variable |x - y~|, tx = d(x)/|.|, ty = d(y)/|.|) or "boundary"
    (restriction to the boundary, no t variables).

    incomplete_powers lists radial powers at which contributions outside
    the polynomial-angular basis were dropped (lattice remainders); the
    listed log terms are always exact.
    """

    n: int
    variant: str
    terms: list = field(default_factory=list)
    incomplete_powers: frozenset = frozenset()

    @property
    def complete(self):
        return not self.incomplete_powers

    def _merge(self, power, log, tx, ty, jp):
        if jp.is_zero():
            return
        for t in self.terms:
            if t.power == power and t.log == log:
                cur = t.coeff.get((tx, ty), JetPoly.zero()) + jp
                if cur.is_zero():
                    t.coeff.pop((tx, ty), None)
                else:
                    t.coeff[(tx, ty)] = cur
                return
        self.terms.append(KernelTerm(power, log, {(tx, ty): jp}))

    def add_expansion(self, other, jp=None):
        for t in other.terms:
            for (tx, ty), c in t.coeff.items():
                self._merge(t.power, t.log, tx, ty, c if jp is None else c * jp)
        self.incomplete_powers = self.incomplete_powers | other.incomplete_powers

    def cleaned(self):
        terms = [t for t in self.terms if t.coeff]
        for t in terms:
            t.coeff = dict(sorted(t.coeff.items()))
        terms.sort(key=lambda t: (t.power, t.log))
        return KernelExpansion(self.n, self.variant, terms, self.incomplete_powers)

    def log_terms(self):
        return [t for t in self.terms if t.log]

    def lowest_log_coefficient(self):
        """Coefficient of the lowest-power log term ({} if none)."""
        logs = sorted(self.log_terms(), key=lambda t: t.power)
        return dict(logs[0].coeff) if logs else {}

    def evaluate(self, jet, rho, tx, ty=0.0):
        """Float value (the implicit c_n factor is applied here)."""
        cn = math.gamma(self.n / 2) / math.pi ** (self.n / 2)
        total = 0.0
        for t in self.terms:
            s = 0.0
            for (ex, ey), jp in t.coeff.items():
                s += float(jp.eval(jet)) * tx ** ex * ty ** ey
            s *= rho ** t.power
            if t.log:
                s *= math.log(rho)
            total += s
        return cn * total

    # -- serialization ------------------------------------------------------

    @staticmethod
    def _tmono(ex, ey):
        parts = []
        if ex:
            parts.append(f"tx^{ex}" if ey or ex > 1 else ("tx" if ey else f"t^{ex}"))
        if ey:
            parts.append(f"ty^{ey}" if ey > 1 else "ty")
        if not parts:
            return "1"
        return "*".join(parts)

    def to_json(self):
        terms = []
        for t in sorted(self.terms, key=lambda t: (t.power, t.log)):
            entries = []
            for (ex, ey), jp in sorted(t.coeff.items()):
                for mono, val in sorted(jp.to_json().items()):
                    entries.append([self._tmono(ex, ey), mono, val])
            terms.append({"coeff_t_poly": entries, "power": t.power, "log": t.log})
        return {
            "radial_var": "green" if self.variant == "green" else "x",
            "variant": self.variant,
            "n": self.n,
            "implicit_factor": "c_n",
            "terms": terms,
            "incomplete_powers": sorted(self.incomplete_powers),
        }

    @staticmethod
    def _parse_tmono(s):
        ex = ey = 0
        if s != "1":
            for part in s.split("*"):
                if "^" in part:
                    name, e = part.split("^")
                    e = int(e)
                else:
                    name, e = part, 1
                if name in ("t", "tx"):
                    ex = e
                else:
                    ey = e
        return ex, ey

    @staticmethod
    def from_json(obj):
        exp = KernelExpansion(obj["n"], obj["variant"])
        for t in obj["terms"]:
            for tmono, jmono, val in t["coeff_t_poly"]:
                ex, ey = KernelExpansion._parse_tmono(tmono)
                exp._merge(
                    t["power"], t["log"], ex, ey, JetPoly.from_json({jmono: val})
                )
        exp.incomplete_powers = frozenset(obj["incomplete_powers"])
        return exp.cleaned()

    def dumps(self):
        return json.dumps(self.to_json(), separators=(",", ":"))

    def to_csv_rows(self, jet, samples):
        """Numeric sampling rows (rho, tx, ty, value) for plotting hand-off."""
        rows = [("rho", "tx", "ty", "value")]
        for rho, tx, ty in samples:
            rows.append((rho, tx, ty, self.evaluate(jet, rho, tx, ty)))
        return rows

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for t in sorted(self.terms, key=lambda t: (t.power, t.log)):
            coeffs = " + ".join(
                f"({jp})*{self._tmono(ex, ey)}" for (ex, ey), jp in sorted(t.coeff.items())
            )
            tail = f"rho^{t.power}" + ("*log(rho)" if t.log else "")
            chunks.append(f"[{coeffs}] {tail}")
        out = "  +  ".join(chunks)
        if self.incomplete_powers:
            out += f"   (non-log parts dropped at powers {sorted(self.incomplete_powers)})"
        return out


def atoms_to_terms(atoms, n, variant, tshift=0):
    """Convert an atom sum (times t^tshift) to reported kernel terms.

    Plain and log-rho atoms with an even, polynomially-cancelling r-power
    become exact entries; ln(T+rho) contributes its exact ln(rho) part plus
    a dropped angular remainder; arctan and non-polynomial angular parts
    are dropped and their powers flagged.
    """
    exp = KernelExpansion(n, variant)
    incomplete = set()
    # bucket by (radial power, log flag, parity of the r exponent)
    buckets = {}
    for (a, b, c, kind), v in atoms.items():
        if kind in (ATAN, ACOT):
            incomplete.add(a + b + c + tshift)
            continue
        if kind == LNTPR:
            # ln(T+rho) = ln rho + ln(1+t); keep the exact log-rho part
            incomplete.add(a + b + c + tshift)
        is_log = kind in (LNRHO, LNTPR)
        key = (a + b + c, is_log, b % 2)
        buckets.setdefault(key, []).append((a, b, v))
    for (power, is_log, parity), items in buckets.items():
        # write sum T^a r^b rho^(power-a-b) as t^a (1-t^2)^(b/2) rho^power;
        # for odd b pull out one sqrt(1-t^2), which is polynomial only if
        # the remaining rational function cancels to zero.
        mmax = max(0, max(-((b - parity) // 2) for (_, b, _) in items))
        num = {}
        for a, b, v in items:
            piece = _poly_one_minus_t2_power((b - parity) // 2 + mmax)
            for e, cpoly in piece.items():
                _acc(num, a + e, cpoly * v)
        if parity == 1:
            if num:
                incomplete.add(power + tshift)
            continue
        poly = num
        for _ in range(mmax):
            poly = _poly_divide_by_one_minus_t2(poly)
            if poly is None:
                break
        if poly is None:
            incomplete.add(power + tshift)
            continue
        for e, cval in poly.items():
            exp._merge(power + tshift, is_log, e + tshift, 0, JetPoly.const(cval))
    exp.incomplete_powers = frozenset(incomplete)
    return exp.cleaned()


def radial_ift_term(q, p, n, variant="poisson"):
    """Reported expansion of IFT[xn^q w^p e^(-xn w)] / c_n, modulo smooth.

    The monomial xn^q is t^q rho^q in the reported variables.
    """
    if q < 0:
        raise ValueError("xn exponent must be >= 0")
    return atoms_to_terms(radial_profile(p, n), n, variant, tshift=q)


# ---------------------------------------------------------------------------
# expansions of the model kernels


def _center_qp(sym, j, want_yn=False):
    """Center terms of grade j as (q, r, p, jet) tuples; enforces radiality."""
    center = sym.center_grade(j)
    if not center.is_radial_center():
        raise TransformError(
            "center symbol has leftover angular frequency factors; "
            "only radial model symbols can be transformed"
        )
    out = []
    for (xp, xi, w, q, r), c in center.sorted_items():
        if r and not want_yn:
            raise TransformError("unexpected yn factor")
        out.append((q, r, w, c))
    return out


def poisson_kernel_expansion(dom, N, W=None):
    """Boundary expansion of the Poisson kernel along the center normal.

    Grade j contributes at radial power j + 1 - n; the reported terms are
    c_n * (t-polynomial) * rho^power (log rho), with t = xn / |x|.
    """
    from .poisson import compute_poisson_symbols

    if W is None:
        W = 0
    sym = compute_poisson_symbols(dom, N, W)
    exp = KernelExpansion(dom.n, "poisson")
    for j in range(N + 1):
        for q, _r, p, jp in _center_qp(sym, j):
            exp.add_expansion(radial_ift_term(q, p, dom.n), jp)
    return exp.cleaned()


def green_symbol_expansion(gsym, N):
    """Kernel expansion of a Green symbol near the boundary diagonal.

    Terms xn^q yn^r w^s e^(-(xn+yn)w) transform with the single variable
    T = xn + yn; the angular profile polynomial in T/rho becomes a
    polynomial in tx + ty, and xn^q yn^r = tx^q ty^r rho^(q+r).
    """
    n = gsym.n
    exp = KernelExpansion(n, "green")
    for m in range(N + 1):
        for q, r, s, jp in _center_qp(gsym, m, want_yn=True):
            base = atoms_to_terms(radial_profile(s, n), n, "green", tshift=0)
            # distribute t^k -> (tx+ty)^k, then multiply by tx^q ty^r rho^(q+r)
            for t in base.terms:
                for (e, _zero), c in t.coeff.items():
                    for i in range(e + 1):
                        bin_c = math.comb(e, i)
                        exp._merge(
                            t.power + q + r,
                            t.log,
                            i + q,
                            (e - i) + r,
                            c * jp * Fraction(bin_c),
                        )
            if base.incomplete_powers:
                exp.incomplete_powers = exp.incomplete_powers | frozenset(
                    pw + q + r for pw in base.incomplete_powers
                )
    return exp.cleaned()


def bergman_kernel_expansion(dom, N, W=None):
    """Expansion of the harmonic Bergman kernel near the boundary diagonal.

    Runs the full operator chain (Poisson symbol, adjoint, boundary Gram
    operator, its inverse, the projection's Green symbol) and transforms
    the center grades; grade m contributes at radial power m - n.
    """
    from .bergman import bergman_green_symbol, invert_psdo, lambda_symbol
    from .poisson import compute_poisson_symbols

    if W is None:
        W = N  # graded cap 2N: exactly what the depth-N chain consumes
    k = compute_poisson_symbols(dom, N, W)
    s = lambda_symbol(k, N)
    p = invert_psdo(s, N)
    g = bergman_green_symbol(k, p, N)
    return green_symbol_expansion(g, N)


def boundary_psdo_expansion(psym, N):
    """Kernel of a boundary pseudodifferential symbol at the chart center,
    as an expansion in the boundary distance r = |x' - y'|.

    Exact at every power: at T = 0 the transform profiles collapse to pure
    powers of r and exact log r terms.
    """
    n = psym.n
    exp = KernelExpansion(n, "boundary")
    incomplete = set()
    for m in range(N + 1):
        for _q, _r, p, jp in _center_qp(psym, m):
            for (a, b, c, kind), v in radial_profile(p, n).items():
                if a:
                    continue  # vanishes at T = 0
                power = b + c
                if kind == ATAN:
                    continue  # arctan(0/r) = 0
                if kind == ACOT:
                    incomplete.add(power)  # arctan(r/0) = pi/2, not rational
                    continue
                is_log = kind in (LNRHO, LNTPR)  # both reduce to ln r at T=0
                exp._merge(power, is_log, 0, 0, jp.scale(v))
    exp.incomplete_powers = frozenset(incomplete)
    return exp.cleaned()


def lambda_inverse_boundary_expansion(dom, N, W=None):
    """Boundary-trace expansion of the inverse Gram operator's kernel."""
    from .bergman import invert_psdo, lambda_symbol
    from .poisson import compute_poisson_symbols

    if W is None:
        W = N
    k = compute_poisson_symbols(dom, N, W)
    s = lambda_symbol(k, N)
    p = invert_psdo(s, N)
    return boundary_psdo_expansion(p.sym, N)


def log_coefficient(exp):
    """Lowest-log-power coefficient of a kernel expansion.

    Returns a dict (tx_exp, ty_exp) -> JetPoly; empty when no log term is
    present.  The implicit c_n factor is not included.
    """
    return exp.lowest_log_coefficient()


# ---------------------------------------------------------------------------
# symbolic-dimension ladder (multiplication moves only)


def symbolic_profile(p):
    """Atoms of IFT[w^p e^(-Tw)] / c_n with the dimension kept symbolic.

    Only p >= 0 is available (pure differentiation).  Atoms are
    (a, m) -> poly-in-n, standing for  T^a rho^(-n-2m).
    """
    if p < 0:
        raise ValueError("symbolic-dimension ladder only covers p >= 0")
    atoms = {(1, 0): {0: Fraction(1)}}  # T * rho^(-n)
    for _ in range(p):
        nxt = {}
        for (a, m), poly in atoms.items():
            if a:
                cur = nxt.setdefault((a - 1, m), {})
                for e, cv in poly.items():
                    _acc(cur, e, -cv * a)
            # d/dT rho^(-n-2m) = -(n+2m) T rho^(-n-2m-2)
            cur = nxt.setdefault((a + 1, m + 1), {})
            for e, cv in poly.items():
                _acc(cur, e + 1, cv)
                _acc(cur, e, cv * 2 * m)
        atoms = {k: v for k, v in nxt.items() if v}
    return atoms


def symbolic_profile_str(atoms):
    def poly_str(poly):
        parts = []
        for e in sorted(poly, reverse=True):
            c = poly[e]
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*n" if c != 1 else "n")
            else:
                parts.append(f"{c}*n^{e}")
        return " + ".join(parts) if parts else "0"

    chunks = []
    for (a, m) in sorted(atoms):
        poly = atoms[(a, m)]
        tpart = f"T^{a}*" if a > 1 else ("T*" if a == 1 else "")
        chunks.append(f"({poly_str(poly)})*{tpart}rho^(-n-{2 * m})")
    return " + ".join(chunks)
