"""Exact scalar arithmetic over Q(i) extended by integer square roots.

Spin ladder matrices have entries of the form q*sqrt(n) with q rational
and n a small positive integer, and the operator algebra needs i and
exact rational coefficients.  Everything downstream therefore computes
over the field Q(i, sqrt(2), sqrt(3), ...).  An element is stored as a
finite sum over squarefree n of (a_n + b_n*i)*sqrt(n) with Fraction
coefficients, which makes zero tests, equality and inversion exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def squarefree_split(n: int) -> tuple[int, int]:
    """Split n >= 1 as g*g*m with m squarefree.  Returns (g, m)."""
    if n < 1:
        raise ValueError("squarefree_split needs a positive integer")
    g, m, d = 1, 1, 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        g *= d ** (e // 2)
        if e % 2:
            m *= d
        d += 1 if d == 2 else 2
    return g, m * n


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


_ZERO_FRACTION = Fraction(0)


class Scalar:
    """A finite sum  sum_n (a_n + b_n*i) * sqrt(n)  over squarefree n >= 1."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict[int, tuple[Fraction, Fraction]] | None = None):
        t = {}
        if terms:
            for n, (re, im) in terms.items():
                if re or im:
                    t[n] = (re, im)
        self.terms = t
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rational(cls, re, im=0) -> "Scalar":
        return cls({1: (Fraction(re), Fraction(im))})

    @classmethod
    def sqrt_int(cls, n: int) -> "Scalar":
        """Exact square root of a nonnegative integer."""
        if n < 0:
            raise ValueError("sqrt_int takes a nonnegative integer")
        if n == 0:
            return cls()
        g, m = squarefree_split(n)
        return cls({m: (Fraction(g), _ZERO_FRACTION)})

    @staticmethod
    def _coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar({1: (Fraction(x), _ZERO_FRACTION)})
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for n, (re, im) in other.terms.items():
            if n in out:
                a, b = out[n]
                out[n] = (a + re, b + im)
            else:
                out[n] = (re, im)
        return Scalar(out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar({n: (-re, -im) for n, (re, im) in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[int, tuple[Fraction, Fraction]] = {}
        for n1, (a1, b1) in self.terms.items():
            for n2, (a2, b2) in other.terms.items():
                if n1 == n2:
                    g, m = n1, 1
                else:
                    g, m = squarefree_split(n1 * n2)
                re = (a1 * a2 - b1 * b2) * g
                im = (a1 * b2 + b1 * a2) * g
                if m in out:
                    c, d = out[m]
                    out[m] = (c + re, d + im)
                else:
                    out[m] = (re, im)
        return Scalar(out)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        """Multiplicative inverse, by peeling radicals one prime at a time."""
        if not self.terms:
            raise ZeroDivisionError("inverse of zero")
        primes: set[int] = set()
        for n in self.terms:
            primes.update(_prime_factors(n))
        if not primes:
            re, im = self.terms[1]
            d = re * re + im * im
            return Scalar({1: (re / d, -im / d)})
        p = max(primes)
        # write self = A + B*sqrt(p) with A, B free of sqrt(p)
        a_terms, b_terms = {}, {}
        for n, c in self.terms.items():
            if n % p == 0:
                b_terms[n // p] = c
            else:
                a_terms[n] = c
        a, b = Scalar(a_terms), Scalar(b_terms)
        denom = a * a - b * b * p  # nonzero: Galois conjugate of a unit
        inv = denom.inverse()
        b_sqrtp = Scalar({n * p: c for n, c in b.terms.items()})
        return (a - b_sqrtp) * inv

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    # -- structure ---------------------------------------------------------

    def conjugate(self) -> "Scalar":
        return Scalar({n: (re, -im) for n, (re, im) in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def is_real(self) -> bool:
        return all(im == 0 for _, im in self.terms.values())

    def is_rational(self) -> bool:
        return set(self.terms) <= {1} and self.is_real()

    def rational_part(self) -> tuple[Fraction, Fraction]:
        return self.terms.get(1, (_ZERO_FRACTION, _ZERO_FRACTION))

    def real_imag(self) -> tuple["Scalar", "Scalar"]:
        """Split as re + i*im with re, im having real coefficients only."""
        re = Scalar({n: (r, _ZERO_FRACTION) for n, (r, _) in self.terms.items()})
        im = Scalar({n: (i, _ZERO_FRACTION) for n, (_, i) in self.terms.items()})
        return re, im

    def to_complex(self) -> complex:
        out = 0j
        for n, (re, im) in self.terms.items():
            out += complex(re, im) * n ** 0.5
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for n in sorted(self.terms):
            re, im = self.terms[n]
            if im == 0:
                body = str(re)
            elif re == 0:
                body = f"{im}*i"
            else:
                sign = "+" if im > 0 else "-"
                body = f"({re}{sign}{abs(im)}*i)"
            if n != 1:
                body = f"{body}*sqrt({n})" if body != "1" else f"sqrt({n})"
            parts.append(body)
        return " + ".join(parts)


ZERO = Scalar()
ONE = Scalar.from_rational(1)
I = Scalar.from_rational(0, 1)


def rat(num, den=1) -> Scalar:
    """Shorthand for an exact rational scalar num/den."""
    return Scalar.from_rational(Fraction(num, den))


# -- small dense matrices over Scalar ---------------------------------------
#
# Spin matrices and block structures are tiny (dimension <= 2s+1 <= 9 and
# block count <= 4), so plain tuples of tuples are enough.

Matrix = tuple[tuple[Scalar, ...], ...]


def identity_matrix(dim: int) -> Matrix:
    return tuple(
        tuple(ONE if r == c else ZERO for c in range(dim)) for r in range(dim)
    )


def zero_matrix(rows: int, cols: int | None = None) -> Matrix:
    cols = rows if cols is None else cols
    return tuple(tuple(ZERO for _ in range(cols)) for _ in range(rows))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_scale(c: Scalar, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0])
    out = []
    for r in range(rows):
        row = []
        for c in range(cols):
            acc = ZERO
            for k in range(inner):
                if a[r][k] and b[k][c]:
                    acc = acc + a[r][k] * b[k][c]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_conj(a: Matrix) -> Matrix:
    return tuple(tuple(x.conjugate() for x in row) for row in a)


def mat_transpose(a: Matrix) -> Matrix:
    return tuple(tuple(a[r][c] for r in range(len(a))) for c in range(len(a[0])))


def mat_dagger(a: Matrix) -> Matrix:
    return mat_transpose(mat_conj(a))


def mat_is_zero(a: Matrix) -> bool:
    return all(x.is_zero() for row in a for x in row)


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return mat_is_zero(mat_sub(a, b))


def nullspace(rows: list[list[Scalar]], ncols: int) -> list[list[Scalar]]:
    """Basis of the solution space of rows * x = 0 over the scalar field.

    Exact Gaussian elimination; every returned vector has its pivot-free
    coordinates set to 0/1 so the basis is deterministic.
    """
    m = [list(r) for r in rows]
    pivots: list[tuple[int, int]] = []  # (row, col)
    r = 0
    for c in range(ncols):
        pr = None
        for rr in range(r, len(m)):
            if not m[rr][c].is_zero():
                pr = rr
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c].inverse()
        m[r] = [inv * x for x in m[r]]
        for rr in range(len(m)):
            if rr != r and not m[rr][c].is_zero():
                f = m[rr][c]
                m[rr] = [x - f * y for x, y in zip(m[rr], m[r])]
        pivots.append((r, c))
        r += 1
        if r == len(m):
            break
    pivot_cols = {c for _, c in pivots}
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for pr, pc in pivots:
            v[pc] = -m[pr][free]
        basis.append(v)
    return basis
