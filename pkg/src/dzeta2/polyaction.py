"""Weight-(k-2) action of projective 2x2 integer matrices on polynomials.

The action is f|gamma = (cx+d)^(k-2) f((ax+b)/(cx+d)) on rational polynomials
of degree at most k-2, extended linearly to formal integer combinations of
matrices.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb


class SingularMatrixError(ValueError):
    """Matrix with zero determinant where an invertible one is required."""


class ProjMatrix:
    """2x2 integer matrix up to sign (M and -M are identified).

    Normalized so that the bottom row (c, d) is lexicographically positive,
    which makes equality and hashing deterministic.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        if a * d - b * c == 0:
            raise SingularMatrixError(f"[[{a},{b}],[{c},{d}]] has determinant 0")
        if c < 0 or (c == 0 and d < 0):
            a, b, c, d = -a, -b, -c, -d
        self.a, self.b, self.c, self.d = a, b, c, d

    def det(self):
        return self.a * self.d - self.b * self.c

    def __mul__(self, other):
        return ProjMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self):
        return self  # projective

    def __eq__(self, other):
        if not isinstance(other, ProjMatrix):
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def to_json(self):
        return [[self.a, self.b], [self.c, self.d]]

    def __repr__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


T = ProjMatrix(1, 1, 0, 1)
S = ProjMatrix(0, -1, 1, 0)
EPS = ProjMatrix(-1, 0, 0, 1)
DELTA = ProjMatrix(0, 1, 1, 0)
M = ProjMatrix(-1, -1, 2, 1)
T_PRIME = ProjMatrix(1, 0, -1, 1)
T_TRANS = ProjMatrix(1, 0, 1, 1)
ONE = ProjMatrix(1, 0, 0, 1)


class GroupRingElement:
    """Formal integer combination of projective matrices."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for g, c in (terms or {}).items():
            if c != 0:
                clean[g] = clean.get(g, 0) + c
        self.terms = {g: c for g, c in clean.items() if c != 0}

    @classmethod
    def of(cls, g, coeff=1):
        return cls({g: coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, 0) + c
        return GroupRingElement(out)

    def __sub__(self, other):
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, 0) - c
        return GroupRingElement(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement({g: c * other for g, c in self.terms.items()})
        out = {}
        for g1, c1 in self.terms.items():
            for g2, c2 in other.terms.items():
                g = g1 * g2
                out[g] = out.get(g, 0) + c1 * c2
        return GroupRingElement(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items(), key=lambda t: repr(t[0]))))

    def to_json(self):
        return [{"coeff": c, "matrix": g.to_json()}
                for g, c in sorted(self.terms.items(), key=lambda t: t[0].to_json())]

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{g!r}" for g, c in self.terms.items())


def ring(*pairs):
    """Build a group-ring element from (coeff, matrix) pairs."""
    out = GroupRingElement()
    for c, g in pairs:
        out = out + GroupRingElement.of(g, c)
    return out


class Poly:
    """Rational polynomial of degree at most k-2, stored densely."""

    __slots__ = ("weight", "coeffs")

    def __init__(self, weight, coeffs):
        if weight < 2:
            raise ValueError("weight must be at least 2")
        coeffs = [Fraction(c) if isinstance(c, int) else c for c in coeffs]
        deg = weight - 2
        if len(coeffs) > deg + 1:
            for c in coeffs[deg + 1:]:
                if c != 0:
                    raise ValueError("degree exceeds weight - 2")
            coeffs = coeffs[: deg + 1]
        coeffs = coeffs + [Fraction(0)] * (deg + 1 - len(coeffs))
        self.weight = weight
        self.coeffs = tuple(coeffs)

    @classmethod
    def monomial(cls, weight, i, c=1):
        v = [Fraction(0)] * (weight - 1)
        v[i] = Fraction(c)
        return cls(weight, v)

    @classmethod
    def zero(cls, weight):
        return cls(weight, [])

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.weight == other.weight and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.weight, self.coeffs))

    def __add__(self, other):
        return Poly(self.weight, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return Poly(self.weight, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Poly(self.weight, [-c for c in self.coeffs])

    def scale(self, c):
        c = Fraction(c) if isinstance(c, int) else c
        return Poly(self.weight, [c * x for x in self.coeffs])

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def parity_even(self):
        return all(c == 0 for i, c in enumerate(self.coeffs) if i % 2 == 1)

    def parity_odd(self):
        return all(c == 0 for i, c in enumerate(self.coeffs) if i % 2 == 0)

    def to_homogeneous(self, bound=None):
        """F(X, Y) = Y^(k-2) f(X/Y) as a BiPoly."""
        from .exactalg import BiPoly
        deg = self.weight - 2
        return BiPoly(bound if bound is not None else deg,
                      {(i, deg - i): c for i, c in enumerate(self.coeffs) if c != 0})

    def eval(self, x):
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def __repr__(self):
        return f"Poly(k={self.weight}, {list(self.coeffs)})"


def _power_table(a, b, n):
    """Coefficient rows of (a x + b)^i for i = 0..n."""
    rows = [[1]]
    for i in range(n):
        prev = rows[-1]
        cur = [0] * (i + 2)
        for j, c in enumerate(prev):
            cur[j] += b * c
            cur[j + 1] += a * c
        rows.append(cur)
    return rows


def slash(f, gamma, k=None):
    """f|_{k-2} gamma = (cx+d)^(k-2) f((ax+b)/(cx+d)), exact."""
    k = f.weight if k is None else k
    if k != f.weight:
        raise ValueError("weight mismatch")
    deg = k - 2
    a, b, c, d = gamma.a, gamma.b, gamma.c, gamma.d
    num = _power_table(a, b, deg)   # (ax+b)^i
    den = _power_table(c, d, deg)   # (cx+d)^j
    out = [Fraction(0)] * (deg + 1)
    for i, fc in enumerate(f.coeffs):
        if fc == 0:
            continue
        ni, dj = num[i], den[deg - i]
        for u, cu in enumerate(ni):
            if cu == 0:
                continue
            for v, cv in enumerate(dj):
                if cv == 0:
                    continue
                out[u + v] += fc * cu * cv
    return Poly(k, out)


def slash_ring(f, elem, k=None):
    """Linear extension of the slash action to the group ring."""
    k = f.weight if k is None else k
    out = Poly.zero(k)
    for g, c in elem.terms.items():
        out = out + slash(f, g, k).scale(c)
    return out


def verify_group_identities():
    """Check the projective identities used throughout; returns pass/fail each."""
    checks = {
        "TSTST = S": T * S * T * S * T == S,
        "T eps T = eps": T * EPS * T == EPS,
        "eps S = delta": EPS * S == DELTA,
        "delta eps = S": DELTA * EPS == S,
        "eps delta = S": EPS * DELTA == S,
        "M^2 = 1": M * M == ONE,
        "(T eps)^2 = 1": (T * EPS) * (T * EPS) == ONE,
        "TMT' = transpose(T)": T * M * T_PRIME == T_TRANS,
        "T != S": T != S,
    }
    return checks
