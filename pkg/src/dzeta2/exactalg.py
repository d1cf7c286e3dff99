"""Exact arithmetic kernels: truncated q-series, bivariate polynomials and
rational matrices with kernel computations.

Everything here is pure and immutable; scalars are ``fractions.Fraction``
unless a series/polynomial is explicitly built over another commutative ring
(e.g. the symbolic scalars of :mod:`dzeta2.double_eis`).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd


class RingMismatchError(TypeError):
    """Arithmetic between series over different coefficient rings."""


class InexactDivisionError(ArithmeticError):
    """Exact division left a nonzero remainder (construction bug upstream)."""


def _coerce(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


def _ring_tag(coeffs):
    for c in coeffs:
        if not isinstance(c, (int, Fraction)):
            return type(c).__name__
    return "Q"


class QSeries:
    """Power series in q truncated at a fixed order N (inclusive).

    Arithmetic between two series truncates to the smaller order;
    coefficients beyond the stored order are never read.
    """

    __slots__ = ("order", "coeffs", "ring")

    def __init__(self, order, coeffs):
        if order < 0:
            raise ValueError("order must be >= 0")
        coeffs = [_coerce(c) for c in coeffs]
        if len(coeffs) != order + 1:
            raise ValueError("need exactly order+1 coefficients")
        self.order = order
        self.coeffs = tuple(coeffs)
        self.ring = _ring_tag(self.coeffs)

    @classmethod
    def zero(cls, order):
        return cls(order, [Fraction(0)] * (order + 1))

    @classmethod
    def one(cls, order):
        return cls(order, [Fraction(1)] + [Fraction(0)] * order)

    @classmethod
    def from_dict(cls, order, data):
        coeffs = [Fraction(0)] * (order + 1)
        for n, c in data.items():
            if 0 <= n <= order:
                coeffs[n] = _coerce(c)
        return cls(order, coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(self.coeffs[i] == other.coeffs[i] for i in range(n + 1))

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def _binop(self, other, op):
        if not isinstance(other, QSeries):
            raise RingMismatchError("expected a QSeries operand")
        n = min(self.order, other.order)
        return QSeries(n, [op(self.coeffs[i], other.coeffs[i]) for i in range(n + 1)])

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __neg__(self):
        return QSeries(self.order, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        if self.ring != other.ring:
            raise RingMismatchError(
                f"coefficient rings differ: {self.ring} vs {other.ring}")
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for m in range(n + 1):
            s = a[0] * b[m]
            for i in range(1, m + 1):
                s += a[i] * b[m - i]
            out.append(s)
        return QSeries(n, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = _coerce(c)
        return QSeries(self.order, [c * x for x in self.coeffs])

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return QSeries(order, self.coeffs[: order + 1])

    def shift_down(self):
        """Exact division by q; the constant term must vanish."""
        if self.coeffs[0] != 0 * self.coeffs[0]:
            raise InexactDivisionError("series not divisible by q")
        return QSeries(self.order - 1, self.coeffs[1:])

    def compose_power(self, d):
        """Substitute q -> q^d (d >= 1)."""
        out = [0 * self.coeffs[0]] * (self.order + 1)
        for n, c in enumerate(self.coeffs):
            if n * d <= self.order:
                out[n * d] = c
        return QSeries(self.order, out)

    def is_zero(self):
        z = 0 * self.coeffs[0]
        return all(c == z for c in self.coeffs)

    def to_json(self):
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        return f"QSeries(order={self.order}, [{head}{', ...' if self.order > 5 else ''}])"


def series_mul(a, b):
    """Cauchy product of two truncated series over the same ring."""
    return a * b


class BiPoly:
    """Polynomial in X, Y of total degree <= bound.

    Coefficients live in any commutative ring; ``zero`` is the ring zero and
    is used for padding, so it must carry the right truncation order when the
    ring is itself a series ring.
    """

    __slots__ = ("bound", "coeffs", "zero_elt")

    def __init__(self, bound, coeffs, zero=Fraction(0)):
        self.bound = bound
        self.zero_elt = zero
        clean = {}
        for (i, j), c in coeffs.items():
            if i < 0 or j < 0 or i + j > bound:
                raise ValueError(f"monomial X^{i} Y^{j} exceeds degree bound {bound}")
            if c != zero:
                clean[(i, j)] = c
        self.coeffs = clean

    def get(self, i, j):
        return self.coeffs.get((i, j), self.zero_elt)

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.get(i, j) == other.get(i, j) for (i, j) in keys)

    def __hash__(self):
        return hash((self.bound, tuple(sorted(self.coeffs.items()))))

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return BiPoly(min(self.bound, other.bound) if isinstance(other, BiPoly) else self.bound,
                      out, self.zero_elt)

    def __sub__(self, other):
        return self + other.scale(Fraction(-1))

    def scale(self, c):
        return BiPoly(self.bound, {k: c * v for k, v in self.coeffs.items()}, self.zero_elt)

    def mul(self, other):
        """Product truncated at the smaller degree bound."""
        bound = min(self.bound, other.bound)
        out = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                i, j = i1 + i2, j1 + j2
                if i + j > bound:
                    continue
                k = (i, j)
                t = c1 * c2
                out[k] = out[k] + t if k in out else t
        return BiPoly(bound, out, self.zero_elt)

    def substitute(self, x_form, y_form):
        """Apply (X, Y) -> (a X + b Y, c X + d Y) with integer a, b, c, d.

        Expansion is exact via the binomial theorem; total degree is
        preserved, so no truncation loss occurs.
        """
        (a, b), (c, d) = x_form, y_form
        for t in (a, b, c, d):
            if not isinstance(t, int):
                raise TypeError("substitution must be linear with integer coefficients")
        out = {}
        for (i, j), coeff in self.coeffs.items():
            # (aX+bY)^i (cX+dY)^j
            for u in range(i + 1):
                cu = comb(i, u) * a**u * b ** (i - u)
                if cu == 0:
                    continue
                for v in range(j + 1):
                    cv = comb(j, v) * c**v * d ** (j - v)
                    if cv == 0:
                        continue
                    k = (u + v, i + j - u - v)
                    t = (cu * cv) * coeff
                    out[k] = out[k] + t if k in out else t
        return BiPoly(self.bound, out, self.zero_elt)

    def swap(self):
        return BiPoly(self.bound, {(j, i): c for (i, j), c in self.coeffs.items()},
                      self.zero_elt)

    def eval(self, x0, y0):
        """Evaluate at a rational point (powers of exact scalars)."""
        total = self.zero_elt
        for (i, j), c in self.coeffs.items():
            total = total + (x0**i * y0**j) * c
        return total

    def divide_x(self):
        """Exact division by X; fails loudly on a nonzero remainder."""
        for (i, j), c in self.coeffs.items():
            if i == 0:
                raise InexactDivisionError("not divisible by X")
        return BiPoly(self.bound, {(i - 1, j): c for (i, j), c in self.coeffs.items()},
                      self.zero_elt)

    def divide_x_minus_y(self):
        """Exact division by (X - Y); the remainder must vanish."""
        # synthetic division in X with coefficients in R[Y]
        deg_x = max((i for (i, _) in self.coeffs), default=0)
        rows = [dict() for _ in range(deg_x + 1)]
        for (i, j), c in self.coeffs.items():
            rows[i][j] = c
        quot = {}
        carry = {}  # current quotient row (coefficients in Y)
        for i in range(deg_x, 0, -1):
            cur = dict(rows[i])
            for j, c in carry.items():  # + Y * previous quotient row
                cur[j + 1] = cur.get(j + 1, self.zero_elt) + c
            for j, c in cur.items():
                if c != self.zero_elt:
                    quot[(i - 1, j)] = c
            carry = cur
        rem = dict(rows[0])
        for j, c in carry.items():
            rem[j + 1] = rem.get(j + 1, self.zero_elt) + c
        for c in rem.values():
            if c != self.zero_elt:
                raise InexactDivisionError("not divisible by (X - Y)")
        return BiPoly(self.bound, quot, self.zero_elt)

    def __repr__(self):
        return f"BiPoly(bound={self.bound}, {len(self.coeffs)} terms)"


def bipoly_substitute(p, x_form, y_form):
    return p.substitute(x_form, y_form)


def _normalize_vector(vec):
    """Scale a rational vector to a primitive integer vector, first nonzero > 0."""
    den = 1
    for c in vec:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return [Fraction(0)] * len(vec)
    ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return [Fraction(x) for x in ints]


class QMatrix:
    """Dense matrix over the rationals with exact row reduction."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        self.entries = tuple(tuple(_coerce(c) for c in row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")

    @classmethod
    def zero(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def row(self, i):
        return list(self.entries[i])

    def transpose(self):
        return QMatrix([[self.entries[i][j] for i in range(self.rows)]
                        for j in range(self.cols)])

    def rref(self):
        """Reduced row echelon form; returns (R, rank, pivot columns)."""
        m = [list(row) for row in self.entries]
        nr, nc = self.rows, self.cols
        pivots = []
        r = 0
        for c in range(nc):
            piv = next((i for i in range(r, nr) if m[i][c] != 0), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = 1 / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(nr):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == nr:
                break
        return QMatrix(m), len(pivots), pivots

    def rank(self):
        return self.rref()[1]

    def kernel(self, side="right"):
        """Basis of the requested kernel, echelon-ordered and normalized
        (primitive integer vectors, first nonzero entry positive)."""
        if side == "left":
            return self.transpose().kernel("right")
        if side != "right":
            raise ValueError("side must be 'left' or 'right'")
        red, rank, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            vec = [Fraction(0)] * self.cols
            vec[fc] = Fraction(1)
            for r, pc in enumerate(pivots):
                vec[pc] = -red.entries[r][fc]
            basis.append(_normalize_vector(vec))
        return basis

    def mul_vector(self, v):
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((row[j] * v[j] for j in range(self.cols)), Fraction(0))
                for row in self.entries]

    def vector_mul(self, c):
        if len(c) != self.rows:
            raise ValueError("dimension mismatch")
        return [sum((c[i] * self.entries[i][j] for i in range(self.rows)), Fraction(0))
                for j in range(self.cols)]

    def in_row_space(self, v):
        """Membership of v in the row space.

        Returns (True, coeffs) with coeffs^T M = v, or (False, None).
        """
        v = [_coerce(c) for c in v]
        if len(v) != self.cols:
            raise ValueError("vector length must equal column count")
        # solve M^T c = v by elimination on the augmented transpose
        aug = [[self.entries[i][j] for i in range(self.rows)] + [v[j]]
               for j in range(self.cols)]
        nr, nc = self.cols, self.rows
        pivots = []
        r = 0
        for c in range(nc):
            piv = next((i for i in range(r, nr) if aug[i][c] != 0), None)
            if piv is None:
                continue
            aug[r], aug[piv] = aug[piv], aug[r]
            inv = 1 / aug[r][c]
            aug[r] = [x * inv for x in aug[r]]
            for i in range(nr):
                if i != r and aug[i][c] != 0:
                    f = aug[i][c]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
            pivots.append(c)
            r += 1
            if r == nr:
                break
        for i in range(r, nr):
            if aug[i][nc] != 0:
                return False, None
        coeffs = [Fraction(0)] * self.rows
        for i, pc in enumerate(pivots):
            coeffs[pc] = aug[i][nc]
        return True, coeffs

    def stack_row(self, v):
        return QMatrix(list(self.entries) + [list(v)])

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        m = [list(row) for row in self.entries]
        n = self.rows
        det = Fraction(1)
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            det *= m[c][c]
            inv = 1 / m[c][c]
            for i in range(c + 1, n):
                if m[i][c] != 0:
                    f = m[i][c] * inv
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return det

    def to_json(self):
        return [[str(c) for c in row] for row in self.entries]

    def __repr__(self):
        return f"QMatrix({self.rows}x{self.cols})"


def rref_rank(m):
    return m.rref()


def kernel(m, side="right"):
    return m.kernel(side)


def in_row_space(m, v):
    return m.in_row_space(v)
