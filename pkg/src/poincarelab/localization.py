"""Newton-Wigner position operators and the particle localization axioms.

The position components on one scalar block are

    F_j = i d_j - (i/2) p_j / p0^2

The counterterm makes F_j formally self-adjoint for the 1/p0-weighted
inner product; without it i*d_j alone is not symmetric.  Multi-block
representations localize with the block-diagonal triple diag(F_j, ...).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .catalog import RepSpec, _CYCLIC, epsilon
from .exactnum import I, ONE, Scalar
from .report import RelationReport
from .spin_algebra import SpinWeight
from .symop import BlockOp, Coefficient, Poly, ScalarOp

# Labels whose Theta/Pi compatibility is asserted; for the rest the
# outcome is recorded without a pass/fail claim because the axioms are
# not known to single out this triple there.
RESOLVED_LABELS = frozenset(
    ("up", "down", "sym3", "sym5", "newup:identity", "newup:symplectic")
)


@dataclass(frozen=True)
class PositionTriple:
    q1: BlockOp
    q2: BlockOp
    q3: BlockOp

    def as_tuple(self) -> tuple[BlockOp, BlockOp, BlockOp]:
        return (self.q1, self.q2, self.q3)

    @property
    def blocks(self) -> int:
        return self.q1.blocks


@lru_cache(maxsize=None)
def position_component(axis: int, dim: int) -> ScalarOp:
    """F_axis = i d_axis - (i/2) p_axis / p0^2 on one scalar block."""
    half_i = Scalar.from_rational(0, Fraction(-1, 2))
    counter = ScalarOp.from_coefficient(
        Coefficient(Poly.sym(f"p{axis}").scale(half_i), 2, 0), dim
    )
    return ScalarOp.deriv_op(axis, dim).scale(I) + counter


def newton_wigner(spin: SpinWeight, blocks: int) -> PositionTriple:
    if blocks not in (1, 2):
        raise ValueError("unsupported block count")
    dim = spin.dim
    ops = [
        BlockOp.diag([position_component(axis, dim)] * blocks)
        for axis in (1, 2, 3)
    ]
    return PositionTriple(*ops)


def verify_position_axioms(rep: RepSpec, q: PositionTriple) -> RelationReport:
    """Localization axioms: commutativity, Euclidean covariance,
    self-adjointness, and Theta/Pi compatibility.

    The Theta/Pi checks are asserted only for RESOLVED_LABELS; for any
    other representation the computed outcome is recorded.
    """
    if q.blocks != rep.blocks:
        raise ValueError("position triple does not match the block count")
    rpt = RelationReport(rep.label, rep.two_s)
    qs = q.as_tuple()
    for a, b in ((1, 2), (1, 3), (2, 3)):
        diff = qs[a - 1].commutator(qs[b - 1])
        rpt.add(f"[Q{a},Q{b}] == 0", "symbolic", diff.is_zero())
    ident = BlockOp.identity(rep.blocks, rep.dim)
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            diff = qs[a - 1].commutator(rep.p[b - 1])
            if a == b:
                diff = diff - ident.scale(I)
                rpt.add(f"[Q{a},P{a}] == i", "symbolic", diff.is_zero())
            else:
                rpt.add(f"[Q{a},P{b}] == 0", "symbolic", diff.is_zero())
    for k in (1, 2, 3):
        for a in (1, 2, 3):
            diff = rep.j[k - 1].commutator(qs[a - 1])
            if k == a:
                rpt.add(f"[J{k},Q{a}] == 0", "symbolic", diff.is_zero())
            else:
                l = 6 - k - a
                sign = epsilon(k, a, l)
                coeff = I if sign > 0 else -I
                diff = diff - qs[l - 1].scale(coeff)
                rpt.add(
                    f"[J{k},Q{a}] == {'i' if sign > 0 else '-i'}*Q{l}",
                    "symbolic", diff.is_zero(),
                )
    for a in (1, 2, 3):
        diff = qs[a - 1].adjoint() - qs[a - 1]
        rpt.add(f"adjoint(Q{a}) == Q{a}", "symbolic", diff.is_zero())
    resolved = rep.label in RESOLVED_LABELS
    for name, op, sign in (("Theta", rep.theta, 1), ("Pi", rep.pi, -1)):
        ok = all(
            (op * qa - (qa * op).scale(sign)).is_zero() for qa in qs
        )
        rel = f"{name}*Q == {'Q' if sign > 0 else '-Q'}*{name}"
        if resolved:
            rpt.add(rel, "symbolic", ok)
        else:
            rpt.record(rel, "symbolic", "holds" if ok else "does not hold")
    return rpt


def localization_report(rep: RepSpec) -> RelationReport:
    """Convenience: build the canonical triple for the rep and verify."""
    q = newton_wigner(SpinWeight(rep.two_s), rep.blocks)
    return verify_position_axioms(rep, q)
