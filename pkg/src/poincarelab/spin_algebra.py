"""Exact spin matrices and the spin-flip conjugation matrix.

Conventions: basis vectors are ordered by descending magnetic number
m = s, s-1, ..., -s, so S3 = diag(s, ..., -s).  S1 and S2 come from the
ladder operators S+- with matrix elements sqrt((s-m)(s+m+1)), which are
square roots of integers for every integer or half-integer s.  The
triple is right-handed: [S1, S2] = i*S3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactnum import (
    I,
    Matrix,
    ONE,
    Scalar,
    ZERO,
    identity_matrix,
    mat_mul,
    mat_scale,
    mat_sub,
    nullspace,
    rat,
    zero_matrix,
)


@dataclass(frozen=True)
class SpinWeight:
    """Spin s encoded as the integer 2s >= 0."""

    two_s: int

    def __post_init__(self):
        if not isinstance(self.two_s, int) or self.two_s < 0:
            raise ValueError("two_s must be a nonnegative integer")

    @property
    def dim(self) -> int:
        return self.two_s + 1

    @property
    def casimir(self) -> Fraction:
        """s(s+1), exactly."""
        return Fraction(self.two_s * (self.two_s + 2), 4)

    def m_values(self) -> list[Fraction]:
        """Magnetic numbers in basis order, descending from s to -s."""
        return [Fraction(self.two_s - 2 * k, 2) for k in range(self.dim)]


@dataclass(frozen=True)
class SpinTriple:
    weight: SpinWeight
    s1: Matrix
    s2: Matrix
    s3: Matrix

    def as_tuple(self) -> tuple[Matrix, Matrix, Matrix]:
        return (self.s1, self.s2, self.s3)


@dataclass(frozen=True)
class TauMatrix:
    weight: SpinWeight
    mat: Matrix


@lru_cache(maxsize=None)
def spin_matrices(two_s: int) -> SpinTriple:
    """The exact spin triple for 2s = two_s."""
    w = SpinWeight(two_s)
    dim = w.dim
    ms = w.m_values()
    # S+ has entries sqrt((s-m)(s+m+1)) one step above the diagonal,
    # with the integer (s-m)(s+m+1) = (k+1)(two_s-k) at column k+1.
    splus = [[ZERO] * dim for _ in range(dim)]
    for k in range(dim - 1):
        n = (k + 1) * (two_s - k)
        splus[k][k + 1] = Scalar.sqrt_int(n)
    splus = tuple(tuple(r) for r in splus)
    sminus = tuple(
        tuple(splus[c][r] for c in range(dim)) for r in range(dim)
    )
    half = rat(1, 2)
    half_i = Scalar.from_rational(0, Fraction(-1, 2))  # 1/(2i) = -i/2
    s1 = tuple(
        tuple(half * (splus[r][c] + sminus[r][c]) for c in range(dim))
        for r in range(dim)
    )
    s2 = tuple(
        tuple(half_i * (splus[r][c] - sminus[r][c]) for c in range(dim))
        for r in range(dim)
    )
    s3 = tuple(
        tuple(Scalar.from_rational(ms[r]) if r == c else ZERO for c in range(dim))
        for r in range(dim)
    )
    return SpinTriple(w, s1, s2, s3)


@lru_cache(maxsize=None)
def tau_matrix(two_s: int) -> TauMatrix:
    """Antidiagonal conjugation matrix with entries (-1)^(s-m).

    tau is real unitary, tau * conj(Sj) * tau^-1 = -Sj, and
    tau * conj(tau) = +Id for integer s and -Id for half-integer s.
    """
    w = SpinWeight(two_s)
    dim = w.dim
    rows = [[ZERO] * dim for _ in range(dim)]
    for r in range(dim):
        # row index r carries m = s - r, so (-1)^(s-m) = (-1)^r
        rows[r][dim - 1 - r] = ONE if r % 2 == 0 else -ONE
    return TauMatrix(w, tuple(tuple(r) for r in rows))


@lru_cache(maxsize=None)
def spin_commutant_dimension(two_s: int) -> int:
    """Dimension of {B : [B, Sj] = 0 for j = 1, 2, 3}.

    Solved exactly as a linear system in the dim^2 matrix entries; the
    result is 1 for every spin, which is what the block reduction of the
    commutant solver relies on.
    """
    triple = spin_matrices(two_s)
    dim = triple.weight.dim
    rows = []
    for s in triple.as_tuple():
        # [B, S] = 0, entry (r, c):  sum_k B[r][k] S[k][c] - S[r][k] B[k][c]
        for r in range(dim):
            for c in range(dim):
                row = [ZERO] * (dim * dim)
                for k in range(dim):
                    row[r * dim + k] = row[r * dim + k] + s[k][c]
                    row[k * dim + c] = row[k * dim + c] - s[r][k]
                rows.append(row)
    return len(nullspace(rows, dim * dim))


def spin_squared(two_s: int) -> Matrix:
    """S1^2 + S2^2 + S3^2, exactly s(s+1) times the identity."""
    t = spin_matrices(two_s)
    dim = t.weight.dim
    acc = zero_matrix(dim)
    for s in t.as_tuple():
        sq = mat_mul(s, s)
        acc = tuple(
            tuple(acc[r][c] + sq[r][c] for c in range(dim)) for r in range(dim)
        )
    return acc


def check_spin_invariants(two_s: int) -> None:
    """Raise if the exact spin identities fail (used as a self test)."""
    t = spin_matrices(two_s)
    dim = t.weight.dim
    s1, s2, s3 = t.as_tuple()
    pairs = [(s1, s2, s3), (s2, s3, s1), (s3, s1, s2)]
    for a, b, c in pairs:
        comm = mat_sub(mat_mul(a, b), mat_mul(b, a))
        target = mat_scale(I, c)
        if not all(
            (comm[r][k] - target[r][k]).is_zero()
            for r in range(dim)
            for k in range(dim)
        ):
            raise AssertionError("spin commutation relation failed")
    expected = mat_scale(Scalar.from_rational(SpinWeight(two_s).casimir),
                         identity_matrix(dim))
    sq = spin_squared(two_s)
    if not all(
        (sq[r][k] - expected[r][k]).is_zero()
        for r in range(dim)
        for k in range(dim)
    ):
        raise AssertionError("spin Casimir failed")
