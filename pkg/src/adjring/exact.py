"""Exact scalars and linear algebra.

Rationals are plain :class:`fractions.Fraction` values (already canonical:
reduced, positive denominator).  :class:`QuadScalar` adds elements
``a + b*sqrt(d)`` of a single real quadratic field.  Vectors are tuples,
matrices are lists of row tuples.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .errors import DimensionError, FieldMismatchError

Vector = tuple
Matrix = list


# ---------------------------------------------------------------------------
# rationals

def Q(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an exact value")
    return Fraction(x)


def qvec(xs: Iterable) -> tuple:
    return tuple(Q(x) for x in xs)


def fmt(x) -> str:
    """Serialize a rational as ``"p/q"`` (``"p"`` when integral)."""
    return str(Q(x))


def lcm(*xs: int) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), xs, 1)


def common_denominator(v: Iterable) -> int:
    """Least positive integer ``c`` with ``c * v`` integral."""
    return lcm(*(Q(x).denominator for x in v))


def is_integral(v: Iterable) -> bool:
    return all(Q(x).denominator == 1 for x in v)


def floor_vec(v: Iterable) -> tuple:
    return tuple(Fraction(math.floor(Q(x))) for x in v)


def ceil_vec(v: Iterable) -> tuple:
    return tuple(Fraction(math.ceil(Q(x))) for x in v)


def wedge(a: Sequence, b: Sequence) -> tuple:
    """Coefficientwise minimum."""
    _check_len(a, b)
    return tuple(min(x, y) for x, y in zip(a, b))


def sup_norm(v: Iterable):
    return max((abs(x) for x in v), default=Fraction(0))


def dot(a: Sequence, b: Sequence):
    _check_len(a, b)
    s = 0
    for x, y in zip(a, b):
        if x and y:
            s = s + x * y
    return s


def vadd(a, b):
    _check_len(a, b)
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    _check_len(a, b)
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a):
    return tuple(c * x for x in a)


def _check_len(a, b):
    if len(a) != len(b):
        raise DimensionError(f"length mismatch: {len(a)} vs {len(b)}")


def primitive(v: Sequence[int]) -> tuple:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g <= 1:
        return tuple(int(x) for x in v)
    return tuple(x // g for x in v)


def integerize(v: Sequence) -> tuple:
    """Positive rescaling of a rational vector to a primitive integer vector."""
    c = common_denominator(v)
    return primitive([int(Q(x) * c) for x in v])


# ---------------------------------------------------------------------------
# quadratic field

def _is_squarefree(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


class QuadScalar:
    """Exact element ``a + b*sqrt(d)`` with rational ``a, b`` and square-free ``d > 1``.

    Mixing two different ``d`` raises :class:`FieldMismatchError`.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d: int = 2):
        if not _is_squarefree(d):
            raise ValueError(f"d={d} must be a square-free integer > 1")
        self.a = Q(a)
        self.b = Q(b)
        self.d = int(d)

    @classmethod
    def sqrt(cls, d: int) -> "QuadScalar":
        return cls(0, 1, d)

    def _coerce(self, other):
        if isinstance(other, QuadScalar):
            if other.d != self.d:
                raise FieldMismatchError(f"Q(sqrt {self.d}) vs Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadScalar(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar(self.a * o.a + self.b * o.b * self.d,
                          self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conjugate(self):
        return QuadScalar(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadScalar(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if (a > 0) == (b > 0):
            return 1 if a > 0 else -1
        # opposite signs: compare a^2 against b^2 d
        lhs, rhs = a * a, b * b * self.d
        if a > 0:
            return 1 if lhs > rhs else -1
        return 1 if rhs > lhs else -1

    def _cmp(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign()

    def __eq__(self, other):
        if isinstance(other, QuadScalar):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def approx(self, digits: int = 30) -> Fraction:
        """Rational within ``|b| * 10**-digits`` of the value."""
        scale = 10 ** digits
        num, den = self.b.numerator, self.b.denominator
        root = math.isqrt(num * num * self.d * scale * scale)
        return self.a + (1 if num >= 0 else -1) * Fraction(root, den * scale)

    def __floor__(self) -> int:
        f = math.floor(self.approx())
        while self < f:
            f -= 1
        while self >= f + 1:
            f += 1
        return f

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"QuadScalar({self.a}, {self.b}, d={self.d})"

    def to_json(self) -> dict:
        return {"a": fmt(self.a), "b": fmt(self.b), "d": self.d}

    @classmethod
    def from_json(cls, obj) -> "QuadScalar":
        if isinstance(obj, dict):
            return cls(obj["a"], obj.get("b", 0), obj["d"])
        return cls(obj, 0, 2)


def as_quad(x, d: int) -> QuadScalar:
    if isinstance(x, QuadScalar):
        if x.d != d:
            raise FieldMismatchError(f"Q(sqrt {x.d}) vs Q(sqrt {d})")
        return x
    return QuadScalar(x, 0, d)


# ---------------------------------------------------------------------------
# rational linear algebra

def solve_linear(m: Sequence[Sequence], b: Sequence):
    """One solution ``x`` of ``m x = b`` or ``None`` when inconsistent.

    Gauss-Jordan elimination; the pivot is the first row with a nonzero entry
    in the leftmost unresolved column, free variables are set to zero.
    """
    rows = len(m)
    if rows != len(b):
        raise DimensionError(f"matrix has {rows} rows, right side has {len(b)} entries")
    cols = len(m[0]) if rows else 0
    if any(len(r) != cols for r in m):
        raise DimensionError("ragged matrix")
    a = [[Q(x) for x in r] + [Q(y)] for r, y in zip(m, b)]
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if a[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = a[i][cols]
    return tuple(x)


def rref(m: Sequence[Sequence]):
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    a = [[Q(x) for x in r] for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return [tuple(row) for row in a[:r]], pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence], cols: int | None = None) -> list:
    """Basis of ``{x : m x = 0}``, one vector per free column (RREF order)."""
    if not m:
        n = cols or 0
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    n = len(m[0])
    red, piv = rref(m)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, pc in enumerate(piv):
            x[pc] = -red[i][f]
        basis.append(tuple(x))
    return basis


def det(m: Sequence[Sequence]):
    """Exact determinant by Gaussian elimination over the rationals."""
    n = len(m)
    if n == 0:
        return 1
    a = [[Q(x) for x in r] for r in m]
    sign = 1
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        pv = a[c][c]
        d *= pv
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / pv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    res = sign * d
    return int(res) if res.denominator == 1 else res


def inverse(m: Sequence[Sequence]) -> list:
    n = len(m)
    aug = [list(map(Q, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [tuple(row[n:]) for row in red]


def matvec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(r, v) for r in m)


def transpose(m: Sequence[Sequence]) -> list:
    return [tuple(c) for c in zip(*m)]


# ---------------------------------------------------------------------------
# integer lattices

def _column_hermite(a: list[list[int]]):
    """Return unimodular ``U`` (n x n) with ``a @ U`` lower-trapezoidal.

    Columns of ``a @ U`` past the rank are zero, so the matching columns of
    ``U`` span the integer kernel of ``a``.
    """
    rows = len(a)
    n = len(a[0]) if rows else 0
    h = [list(r) for r in a]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(i, j, p, q, r, s):
        # (col_i, col_j) <- (p col_i + q col_j, r col_i + s col_j)
        for mat in (h, u):
            for row in mat:
                x, y = row[i], row[j]
                row[i], row[j] = p * x + q * y, r * x + s * y

    k = 0
    for r in range(rows):
        if k >= n:
            break
        for j in range(k + 1, n):
            if h[r][j] == 0:
                continue
            x, y = h[r][k], h[r][j]
            g, s, t = _xgcd(x, y)
            # new col_k = s col_k + t col_j ; new col_j = (-y/g) col_k + (x/g) col_j
            colop(k, j, s, t, -y // g, x // g)
        if h[r][k] != 0:
            if h[r][k] < 0:
                for mat in (h, u):
                    for row in mat:
                        row[k] = -row[k]
            k += 1
    return u, k


def _xgcd(a: int, b: int):
    """g, s, t with s*a + t*b = g = gcd(a, b) > 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def integer_kernel(a: Sequence[Sequence[int]], n: int | None = None) -> list:
    """Basis of the lattice ``{x in Z^n : a x = 0}``."""
    if not a:
        n = n or 0
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    n = len(a[0])
    ai = [[int(x) for x in r] for r in a]
    u, k = _column_hermite(ai)
    return [tuple(u[i][j] for i in range(n)) for j in range(k, n)]


def saturated_basis(gens: Sequence[Sequence], n: int) -> list:
    """Basis of ``span(gens) cap Z^n``."""
    if not gens:
        return []
    perp = nullspace([tuple(map(Q, g)) for g in gens], n)
    if not perp:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return integer_kernel([integerize(p) for p in perp])


def unimodular_completion(v: Sequence[int]) -> list:
    """Matrix ``G`` in GL_n(Z) with ``G v = e_n`` for primitive ``v``."""
    n = len(v)
    u, _ = _column_hermite([list(map(int, v))])
    # row vector v @ u = (g, 0, ..., 0) with g = gcd = 1
    g = sum(int(v[i]) * u[i][0] for i in range(n))
    if abs(g) != 1:
        raise ValueError(f"{tuple(v)} is not primitive")
    ut = [[u[i][j] for i in range(n)] for j in range(n)]  # transpose: ut v = (g,0,...)
    if g < 0:
        ut[0] = [-x for x in ut[0]]
    return ut[1:] + ut[:1]
