"""Exact rational polynomials in the boundary-jet variables a1, a2, ...

Every expansion coefficient produced by the symbolic half of this package
lives in this ring: a_k stands for the k-th derivative at 0 of the profile
function defining the model domain.  Coefficients are `fractions.Fraction`,
so all arithmetic is exact.
"""

from fractions import Fraction

# A monomial is a tuple of exponents (e1, e2, ...) over a1, a2, ... with
# trailing zeros stripped; () is the constant monomial.
_ONE_KEY = ()


def _trim(exps):
    exps = tuple(exps)
    while exps and exps[-1] == 0:
        exps = exps[:-1]
    return exps


class JetPoly:
    """Polynomial in a1, a2, ... with Fraction coefficients.

    Immutable by convention: no method mutates self.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    @staticmethod
    def const(c):
        c = Fraction(c)
        return JetPoly({_ONE_KEY: c}) if c else JetPoly()

    @staticmethod
    def gen(k):
        """The variable a_k (k >= 1)."""
        if k < 1:
            raise ValueError("jet variables are indexed from 1")
        exps = [0] * k
        exps[k - 1] = 1
        return JetPoly({_trim(exps): Fraction(1)})

    @staticmethod
    def zero():
        return JetPoly()

    @staticmethod
    def one():
        return JetPoly.const(1)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return JetPoly(out)

    def __neg__(self):
        return JetPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if len(other.terms) == 1:
            (k2, v2), = other.terms.items()
            if not k2:
                return self.scale(v2)
            out = {}
            for k1, v1 in self.terms.items():
                ka, kb = (k1, k2) if len(k1) >= len(k2) else (k2, k1)
                key = tuple(a + b for a, b in zip(ka, kb)) + ka[len(kb):]
                out[key] = v1 * v2
            return JetPoly(out)
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                ka, kb = (k1, k2) if len(k1) >= len(k2) else (k2, k1)
                key = tuple(e1 + e2 for e1, e2 in zip(ka, kb)) + ka[len(kb):]
                s = out.get(key, 0) + v1 * v2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return JetPoly(out)

    __rmul__ = __mul__

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return JetPoly()
        return JetPoly({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = JetPoly.const(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def eval(self, jet):
        """Evaluate at a_k = jet[k-1]; missing entries count as 0."""
        total = Fraction(0) if all(isinstance(x, Fraction) for x in jet) else 0.0
        for key, coef in self.terms.items():
            val = coef
            for i, e in enumerate(key):
                if not e:
                    continue
                base = jet[i] if i < len(jet) else 0
                val = val * base ** e
            total = total + val
        return total

    def max_index(self):
        return max((len(k) for k in self.terms), default=0)

    # -- serialization ----------------------------------------------------

    @staticmethod
    def _key_str(key):
        if not key:
            return "1"
        parts = []
        for i, e in enumerate(key):
            if e == 1:
                parts.append(f"a{i + 1}")
            elif e:
                parts.append(f"a{i + 1}^{e}")
        return "*".join(parts)

    @staticmethod
    def _parse_key(s):
        if s == "1":
            return _ONE_KEY
        exps = {}
        for part in s.split("*"):
            if "^" in part:
                name, p = part.split("^")
                e = int(p)
            else:
                name, e = part, 1
            exps[int(name[1:])] = e
        size = max(exps)
        return _trim([exps.get(i + 1, 0) for i in range(size)])

    def to_json(self):
        return {self._key_str(k): str(v) for k, v in sorted(self.terms.items())}

    @staticmethod
    def from_json(obj):
        return JetPoly({JetPoly._parse_key(k): Fraction(v) for k, v in obj.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            c = self.terms[key]
            mono = self._key_str(key)
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    __repr__ = __str__
