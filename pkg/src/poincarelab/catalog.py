"""Catalog of positive-mass representations and their mechanical checks.

Each representation acts on vector valued functions on the mass shell.
The ten continuous generators are the energy P0, the momentum components
P1..P3, the rotations J1..J3 and the boosts K1..K3; every entry of the
catalog also carries a time-reversing operator Theta and a space
inversion Pi, each either unitary or antiunitary.

The single scalar block is built from multiplication by p and p0, the
rotation generators -i(p x grad) + S and the boosts
i p0 d_j - (S x p)_j / (mu + p0).  Multi-block entries glue sign-flipped
copies of that block and choose Theta and Pi block patterns; the block
patterns are kept on the spec object so the commutant solver can reuse
them without reparsing operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactnum import I, ONE, Scalar, ZERO
from .report import RelationReport
from .spin_algebra import SpinWeight, spin_matrices, tau_matrix
from .symop import BlockOp, Coefficient, CoeffMatrix, Poly, ScalarOp

UNITARY = "unitary"
ANTIUNITARY = "antiunitary"

_CYCLIC = {1: (2, 3), 2: (3, 1), 3: (1, 2)}


def epsilon(i: int, j: int, k: int) -> int:
    """Totally antisymmetric symbol with epsilon(1,2,3) = +1."""
    if (i, j, k) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        return 1
    if (i, j, k) in ((3, 2, 1), (1, 3, 2), (2, 1, 3)):
        return -1
    return 0


# -- scalar-block generators -------------------------------------------------


def _const_cmat(mat) -> CoeffMatrix:
    return tuple(tuple(Coefficient.const(x) for x in row) for row in mat)


@lru_cache(maxsize=None)
def energy_op(dim: int) -> ScalarOp:
    return ScalarOp.from_coefficient(Coefficient.sym("p0"), dim)


@lru_cache(maxsize=None)
def momentum_op(axis: int, dim: int) -> ScalarOp:
    return ScalarOp.from_coefficient(Coefficient.sym(f"p{axis}"), dim)


@lru_cache(maxsize=None)
def rotation_op(axis: int, two_s: int) -> ScalarOp:
    """-i (p x grad)_axis + S_axis on one scalar block."""
    dim = two_s + 1
    a, b = _CYCLIC[axis]
    spins = spin_matrices(two_s).as_tuple()
    terms = {}
    alpha_b = tuple(1 if i == b - 1 else 0 for i in range(3))
    alpha_a = tuple(1 if i == a - 1 else 0 for i in range(3))
    minus_i_pa = Coefficient(Poly.sym(f"p{a}").scale(-I))
    plus_i_pb = Coefficient(Poly.sym(f"p{b}").scale(I))
    ident = _const_cmat(
        tuple(tuple(ONE if r == c else ZERO for c in range(dim)) for r in range(dim))
    )
    terms[(alpha_b, 0, 0)] = tuple(
        tuple(minus_i_pa if r == c else Coefficient.zero() for c in range(dim))
        for r in range(dim)
    )
    terms[(alpha_a, 0, 0)] = tuple(
        tuple(plus_i_pb if r == c else Coefficient.zero() for c in range(dim))
        for r in range(dim)
    )
    op = ScalarOp(dim, terms)
    spin_mat = spins[axis - 1]
    return op + ScalarOp.from_matrix(_const_cmat(spin_mat))


@lru_cache(maxsize=None)
def boost_op(axis: int, two_s: int) -> ScalarOp:
    """i p0 d_axis - (S x p)_axis / (mu + p0) on one scalar block."""
    dim = two_s + 1
    a, b = _CYCLIC[axis]
    spins = spin_matrices(two_s).as_tuple()
    s_a, s_b = spins[a - 1], spins[b - 1]
    alpha = tuple(1 if i == axis - 1 else 0 for i in range(3))
    i_p0 = Coefficient(Poly.sym("p0").scale(I))
    deriv_part = ScalarOp(
        dim,
        {
            (alpha, 0, 0): tuple(
                tuple(i_p0 if r == c else Coefficient.zero() for c in range(dim))
                for r in range(dim)
            )
        },
    )
    # -(S x p)_axis = S_b p_a - S_a p_b  (cyclic axis -> (a, b))
    pa, pb = Poly.sym(f"p{a}"), Poly.sym(f"p{b}")
    rows = []
    for r in range(dim):
        row = []
        for c in range(dim):
            num = pa.scale(s_b[r][c]) - pb.scale(s_a[r][c])
            row.append(Coefficient(num, 0, 1))
        rows.append(tuple(row))
    return deriv_part + ScalarOp.from_matrix(tuple(rows))


@lru_cache(maxsize=None)
def _tau_conj_reflect(two_s: int) -> ScalarOp:
    """tau * Y * C on one scalar block (the antiunitary time reversal)."""
    dim = two_s + 1
    tau = tau_matrix(two_s).mat
    return ScalarOp(dim, {((0, 0, 0), 1, 1): _const_cmat(tau)})


# -- relation registry --------------------------------------------------------


@dataclass(frozen=True)
class LieRelation:
    """[left, right] == sum of rhs, with rhs pairs (coefficient, generator)."""

    name: str
    family: str
    left: str
    right: str
    rhs: tuple[tuple[Scalar, str], ...]


def _rhs_name(coeff: Scalar, key: str) -> str:
    if coeff == I:
        return f"i*{key}"
    if coeff == -I:
        return f"-i*{key}"
    raise ValueError("unexpected structure constant")


def _build_lie_relations() -> tuple[LieRelation, ...]:
    rels: list[LieRelation] = []
    pairs = ((1, 2), (1, 3), (2, 3))
    for a, b in pairs:
        rels.append(LieRelation(f"[P{a},P{b}] == 0", "PP", f"P{a}", f"P{b}", ()))
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            if a == b:
                rels.append(LieRelation(f"[J{a},P{b}] == 0", "JP", f"J{a}", f"P{b}", ()))
            else:
                l = 6 - a - b
                c = I if epsilon(a, b, l) > 0 else -I
                rels.append(
                    LieRelation(
                        f"[J{a},P{b}] == {_rhs_name(c, f'P{l}')}",
                        "JP", f"J{a}", f"P{b}", ((c, f"P{l}"),),
                    )
                )
    for a, b in pairs:
        l = 6 - a - b
        c = I if epsilon(a, b, l) > 0 else -I
        rels.append(
            LieRelation(
                f"[J{a},J{b}] == {_rhs_name(c, f'J{l}')}",
                "JJ", f"J{a}", f"J{b}", ((c, f"J{l}"),),
            )
        )
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            if a == b:
                rels.append(LieRelation(f"[J{a},K{b}] == 0", "JK", f"J{a}", f"K{b}", ()))
            else:
                l = 6 - a - b
                c = I if epsilon(a, b, l) > 0 else -I
                rels.append(
                    LieRelation(
                        f"[J{a},K{b}] == {_rhs_name(c, f'K{l}')}",
                        "JK", f"J{a}", f"K{b}", ((c, f"K{l}"),),
                    )
                )
    for a, b in pairs:
        l = 6 - a - b
        c = -I if epsilon(a, b, l) > 0 else I
        rels.append(
            LieRelation(
                f"[K{a},K{b}] == {_rhs_name(c, f'J{l}')}",
                "KK", f"K{a}", f"K{b}", ((c, f"J{l}"),),
            )
        )
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            if a == b:
                rels.append(
                    LieRelation(
                        f"[K{a},P{a}] == i*P0", "KP", f"K{a}", f"P{a}", ((I, "P0"),)
                    )
                )
            else:
                rels.append(LieRelation(f"[K{a},P{b}] == 0", "KP", f"K{a}", f"P{b}", ()))
    for a in (1, 2, 3):
        rels.append(LieRelation(f"[P{a},P0] == 0", "P.P0", f"P{a}", "P0", ()))
    for a in (1, 2, 3):
        rels.append(LieRelation(f"[J{a},P0] == 0", "J.P0", f"J{a}", "P0", ()))
    for a in (1, 2, 3):
        rels.append(
            LieRelation(f"[K{a},P0] == i*P{a}", "K.P0", f"K{a}", "P0", ((I, f"P{a}"),))
        )
    assert len(rels) == 45
    return tuple(rels)


LIE_RELATIONS: tuple[LieRelation, ...] = _build_lie_relations()

# Sign of A*G == sign * G*A demanded of a discrete operator A, by kind.
DISCRETE_SIGNS = {
    ("theta", UNITARY): {"P0": -1, "P": 1, "J": 1, "K": -1},
    ("theta", ANTIUNITARY): {"P0": 1, "P": -1, "J": -1, "K": 1},
    ("pi", UNITARY): {"P0": 1, "P": -1, "J": 1, "K": -1},
    ("pi", ANTIUNITARY): {"P0": -1, "P": 1, "J": -1, "K": 1},
}


# -- the representation object -------------------------------------------------


@dataclass(frozen=True)
class RepSpec:
    label: str
    two_s: int
    blocks: int
    p0: BlockOp
    p: tuple[BlockOp, BlockOp, BlockOp]
    j: tuple[BlockOp, BlockOp, BlockOp]
    k: tuple[BlockOp, BlockOp, BlockOp]
    theta: BlockOp
    pi: BlockOp
    theta_kind: str
    pi_kind: str
    spectrum: str
    p0_signs: tuple[int, ...]
    k_signs: tuple[int, ...]
    theta_pattern: tuple[tuple[Scalar, ...], ...]
    pi_pattern: tuple[tuple[Scalar, ...], ...]
    theta_square: Scalar
    pi_square: Scalar
    omega: Scalar

    @property
    def dim(self) -> int:
        return self.two_s + 1

    def generator(self, key: str) -> BlockOp:
        if key == "P0":
            return self.p0
        family, idx = key[0], int(key[1])
        if family == "P":
            return self.p[idx - 1]
        if family == "J":
            return self.j[idx - 1]
        if family == "K":
            return self.k[idx - 1]
        raise KeyError(key)

    def generators(self) -> dict[str, BlockOp]:
        out = {"P0": self.p0}
        for i in (1, 2, 3):
            out[f"P{i}"] = self.p[i - 1]
        for i in (1, 2, 3):
            out[f"J{i}"] = self.j[i - 1]
        for i in (1, 2, 3):
            out[f"K{i}"] = self.k[i - 1]
        return out


# -- builders -------------------------------------------------------------------


def _pattern(rows) -> tuple[tuple[Scalar, ...], ...]:
    return tuple(
        tuple(Scalar.from_rational(Fraction(x)) for x in row) for row in rows
    )


def _pattern_block(pattern, inner: ScalarOp) -> BlockOp:
    n = len(pattern)
    entries = []
    for r in range(n):
        row = []
        for c in range(n):
            s = pattern[r][c]
            if s == ZERO or not s:
                row.append(ScalarOp.zero(inner.dim))
            elif s == ONE:
                row.append(inner)
            else:
                row.append(inner.scale(s))
        entries.append(row)
    return BlockOp(entries)


def _signed_diag(op: ScalarOp, signs) -> BlockOp:
    return BlockOp.diag([op if s > 0 else op.scale(-1) for s in signs])


def _spectrum_from_signs(p0_signs) -> str:
    if all(s > 0 for s in p0_signs):
        return "up"
    if all(s < 0 for s in p0_signs):
        return "down"
    return "symmetric"


def _discrete_op(pattern, spin: str, upsilon: int, kappa: int, two_s: int) -> BlockOp:
    dim = two_s + 1
    if spin == "tau":
        mat = tau_matrix(two_s).mat
    else:
        mat = tuple(
            tuple(ONE if r == c else ZERO for c in range(dim)) for r in range(dim)
        )
    inner = ScalarOp(dim, {((0, 0, 0), upsilon, kappa): _const_cmat(mat)})
    return _pattern_block(pattern, inner)


def _assemble(label, two_s, p0_signs, k_signs, theta_spec, pi_spec) -> RepSpec:
    """Shared assembly: diagonal generators from signs, patterned discretes.

    theta_spec / pi_spec: (pattern rows, spin, upsilon, kappa).
    """
    dim = two_s + 1
    blocks = len(p0_signs)
    p0 = _signed_diag(energy_op(dim), p0_signs)
    p = tuple(
        BlockOp.diag([momentum_op(a, dim)] * blocks) for a in (1, 2, 3)
    )
    j = tuple(
        BlockOp.diag([rotation_op(a, two_s)] * blocks) for a in (1, 2, 3)
    )
    k = tuple(_signed_diag(boost_op(a, two_s), k_signs) for a in (1, 2, 3))
    t_pat = _pattern(theta_spec[0])
    p_pat = _pattern(pi_spec[0])
    theta = _discrete_op(t_pat, theta_spec[1], theta_spec[2], theta_spec[3], two_s)
    pi = _discrete_op(p_pat, pi_spec[1], pi_spec[2], pi_spec[3], two_s)
    theta_kind = ANTIUNITARY if theta_spec[3] else UNITARY
    pi_kind = ANTIUNITARY if pi_spec[3] else UNITARY
    theta_square = (theta * theta).as_constant()
    pi_square = (pi * pi).as_constant()
    if theta_square is None or pi_square is None:
        raise AssertionError(f"{label}: discrete squares are not constant")
    omega = _solve_omega(theta, pi)
    return RepSpec(
        label=label,
        two_s=two_s,
        blocks=blocks,
        p0=p0,
        p=p,
        j=j,
        k=k,
        theta=theta,
        pi=pi,
        theta_kind=theta_kind,
        pi_kind=pi_kind,
        spectrum=_spectrum_from_signs(p0_signs),
        p0_signs=tuple(p0_signs),
        k_signs=tuple(k_signs),
        theta_pattern=t_pat,
        pi_pattern=p_pat,
        theta_square=theta_square,
        pi_square=pi_square,
        omega=omega,
    )


def _solve_omega(theta: BlockOp, pi: BlockOp) -> Scalar:
    """The constant omega with Pi*Theta == omega * Theta*Pi."""
    x = pi * theta
    y = theta * pi
    lead_x = x.leading_constant()
    lead_y = y.leading_constant()
    if lead_x is None or lead_y is None:
        raise AssertionError("Pi*Theta has a nonconstant leading coefficient")
    omega = lead_x / lead_y
    if not (x - y.scale(omega)).is_zero():
        raise AssertionError("Pi*Theta is not proportional to Theta*Pi")
    return omega


_ID2 = ((1, 0), (0, 1))
_SWAP2 = ((0, 1), (1, 0))
_DIAG_PM = ((1, 0), (0, -1))
_SYMPL2 = ((0, 1), (-1, 0))
# four blocks, ordered as the two energy-sign pairs
_I2_X = ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0))
_X_X = ((0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0))
_SYMPL_X = ((0, 0, 0, 1), (0, 0, 1, 0), (0, -1, 0, 0), (-1, 0, 0, 0))

_ONE_BLOCK = ((1,),)


def _build_up(two_s: int) -> RepSpec:
    return _assemble(
        "up", two_s, (1,), (1,),
        (_ONE_BLOCK, "tau", 1, 1),
        (_ONE_BLOCK, "id", 1, 0),
    )


def _build_down(two_s: int) -> RepSpec:
    return _assemble(
        "down", two_s, (-1,), (-1,),
        (_ONE_BLOCK, "tau", 1, 1),
        (_ONE_BLOCK, "id", 1, 0),
    )


_SYM_SPECS = {
    "sym1": ((_SWAP2, "id", 0, 0), (_ID2, "id", 1, 0)),
    "sym2": ((_SWAP2, "id", 0, 0), (_DIAG_PM, "id", 1, 0)),
    "sym3": ((_SWAP2, "id", 0, 0), (_SWAP2, "tau", 0, 1)),
    "sym4": ((_SWAP2, "id", 0, 0), (_SYMPL2, "tau", 0, 1)),
    "sym5": ((_ID2, "tau", 1, 1), (_SWAP2, "tau", 0, 1)),
    "sym6": ((_ID2, "tau", 1, 1), (_SYMPL2, "tau", 0, 1)),
}


def _build_sym(name: str, two_s: int) -> RepSpec:
    theta_spec, pi_spec = _SYM_SPECS[name]
    return _assemble(name, two_s, (1, -1), (1, -1), theta_spec, pi_spec)


def _build_new(direction: str, variant: str, two_s: int) -> RepSpec:
    sign = 1 if direction == "newup" else -1
    tpat = _ID2 if variant == "identity" else _SYMPL2
    return _assemble(
        f"{direction}:{variant}", two_s, (sign, sign), (sign, sign),
        (tpat, "tau", 1, 1),
        (_SWAP2, "id", 1, 0),
    )


def _build_quad(nu: int, two_s: int) -> RepSpec:
    if two_s != 0:
        raise ValueError("the four-block representations exist only for spin 0")
    pipat = _X_X if nu > 0 else _SYMPL_X
    return _assemble(
        f"quad:{'+1' if nu > 0 else '-1'}", 0,
        (1, -1, 1, -1), (1, -1, 1, -1),
        (_I2_X, "id", 0, 0),
        (pipat, "id", 0, 1),
    )


_BUILDERS = {
    "up": _build_up,
    "down": _build_down,
    "sym1": lambda t: _build_sym("sym1", t),
    "sym2": lambda t: _build_sym("sym2", t),
    "sym3": lambda t: _build_sym("sym3", t),
    "sym4": lambda t: _build_sym("sym4", t),
    "sym5": lambda t: _build_sym("sym5", t),
    "sym6": lambda t: _build_sym("sym6", t),
    "newup:identity": lambda t: _build_new("newup", "identity", t),
    "newup:symplectic": lambda t: _build_new("newup", "symplectic", t),
    "newdown:identity": lambda t: _build_new("newdown", "identity", t),
    "newdown:symplectic": lambda t: _build_new("newdown", "symplectic", t),
    "quad:+1": lambda t: _build_quad(1, t),
    "quad:-1": lambda t: _build_quad(-1, t),
}


def build(label: str, two_s: int = 0) -> RepSpec:
    """Construct a catalog representation by label."""
    key = label.strip().lower()
    if key not in _BUILDERS:
        raise ValueError(
            f"unknown representation {label!r}; choose from {sorted(_BUILDERS)}"
        )
    if two_s < 0:
        raise ValueError("two_s must be a nonnegative integer")
    SpinWeight(two_s)
    return _BUILDERS[key](two_s)


def catalog_labels(two_s: int = 0) -> list[str]:
    labels = [
        "up", "down",
        "sym1", "sym2", "sym3", "sym4", "sym5", "sym6",
        "newup:identity", "newup:symplectic",
        "newdown:identity", "newdown:symplectic",
    ]
    if two_s == 0:
        labels += ["quad:+1", "quad:-1"]
    return labels


def enumerate_catalog(two_s: int = 0) -> list[RepSpec]:
    return [build(label, two_s) for label in catalog_labels(two_s)]


# -- verification ---------------------------------------------------------------


def _truncate(text: str, limit: int = 160) -> str:
    return text if len(text) <= limit else text[: limit - 3] + "..."


def verify_lie_relations(rep: RepSpec) -> RelationReport:
    """Check all 45 bracket relations exactly."""
    rpt = RelationReport(rep.label, rep.two_s)
    for rel in LIE_RELATIONS:
        lhs = rep.generator(rel.left).commutator(rep.generator(rel.right))
        diff = lhs
        for coeff, key in rel.rhs:
            diff = diff - rep.generator(key).scale(coeff)
        ok = diff.is_zero()
        rpt.add(
            rel.name, "symbolic", ok,
            "" if ok else _truncate(f"residual {diff!r}"),
        )
    return rpt


def _sign_name(op_name: str, gen_name: str, sign: int) -> str:
    rhs = f"{gen_name}*{op_name}" if sign > 0 else f"-{gen_name}*{op_name}"
    return f"{op_name}*{gen_name} == {rhs}"


def _fmt_unit(s: Scalar) -> str:
    if s == ONE:
        return "1"
    if s == -ONE:
        return "-1"
    return repr(s)


@dataclass(frozen=True)
class DiscreteRelation:
    """One exchange/square/omega requirement for a rep's Theta or Pi."""

    name: str
    op: str           # "theta" or "pi"
    kind: str         # "exchange", "square", "omega"
    family: str = ""  # exchange only: P0, P, J or K
    sign: int = 0     # exchange only
    value: Scalar | None = None  # square/omega only


def discrete_relations(rep: RepSpec) -> tuple[DiscreteRelation, ...]:
    """The discrete relation set demanded by the rep's Theta/Pi kinds."""
    rels: list[DiscreteRelation] = []
    for op_name, kind in (("theta", rep.theta_kind), ("pi", rep.pi_kind)):
        disp = "Theta" if op_name == "theta" else "Pi"
        signs = DISCRETE_SIGNS[(op_name, kind)]
        for fam in ("P0", "P", "J", "K"):
            rels.append(
                DiscreteRelation(
                    _sign_name(disp, fam, signs[fam]), op_name, "exchange",
                    family=fam, sign=signs[fam],
                )
            )
        declared = rep.theta_square if op_name == "theta" else rep.pi_square
        rels.append(
            DiscreteRelation(
                f"{disp}^2 == {_fmt_unit(declared)}", op_name, "square",
                value=declared,
            )
        )
    omega_name = "Pi*Theta == Theta*Pi" if rep.omega == ONE else \
        f"Pi*Theta == {_fmt_unit(rep.omega)}*Theta*Pi"
    rels.append(DiscreteRelation(omega_name, "pi", "omega", value=rep.omega))
    return tuple(rels)


def _generator_family(rep: RepSpec, fam: str) -> list[BlockOp]:
    return {
        "P0": [rep.p0],
        "P": list(rep.p),
        "J": list(rep.j),
        "K": list(rep.k),
    }[fam]


def verify_discrete_relations(rep: RepSpec) -> RelationReport:
    """Exchange relations, squares, and the Pi-Theta commutation constant."""
    rpt = RelationReport(rep.label, rep.two_s)
    for rel in discrete_relations(rep):
        op = rep.theta if rel.op == "theta" else rep.pi
        kind = rep.theta_kind if rel.op == "theta" else rep.pi_kind
        if rel.kind == "exchange":
            ok = True
            bad = ""
            for idx, g in enumerate(_generator_family(rep, rel.family)):
                diff = op * g - (g * op).scale(rel.sign)
                if not diff.is_zero():
                    ok = False
                    bad = f"component {idx + 1}: residual {_truncate(repr(diff))}"
                    break
            rpt.add(rel.name, "symbolic", ok, bad)
        elif rel.kind == "square":
            val = (op * op).as_constant()
            ok = val is not None and val == rel.value and val in (ONE, -ONE)
            if kind == UNITARY:
                ok = ok and val == ONE
            rpt.add(rel.name, "symbolic", ok, "" if ok else f"got {val!r}")
        else:
            diff = rep.pi * rep.theta - (rep.theta * rep.pi).scale(rel.value)
            ok = diff.is_zero() and rel.value in (ONE, -ONE)
            rpt.add(rel.name, "symbolic", ok, "" if ok else _truncate(repr(diff)))
    if rep.label in ("sym5", "sym6"):
        variant = _discrete_op(_pattern(_SWAP2), "tau", 1, 1, rep.two_s)
        holds = (variant * rep.p0 - rep.p0 * variant).is_zero()
        rpt.record(
            "theta-offdiagonal-variant", "symbolic",
            "the block-offdiagonal tau*C*Y form "
            + ("unexpectedly satisfies" if holds else "fails")
            + " Theta*P0 == P0*Theta, so the block-diagonal form is used",
        )
    return rpt


def verify_self_adjointness(rep: RepSpec) -> RelationReport:
    """All ten generators equal their formal adjoints for the 1/p0 weight."""
    rpt = RelationReport(rep.label, rep.two_s)
    for name, g in rep.generators().items():
        diff = g.adjoint() - g
        ok = diff.is_zero()
        rpt.add(f"adjoint({name}) == {name}", "symbolic", ok,
                "" if ok else _truncate(f"residual {diff!r}"))
    return rpt


def mass_squared_operator(rep: RepSpec) -> BlockOp:
    out = rep.p0 * rep.p0
    for g in rep.p:
        out = out - g * g
    return out


def pauli_lubanski(rep: RepSpec) -> tuple[BlockOp, BlockOp, BlockOp, BlockOp]:
    """(W0, W1, W2, W3) with W0 = P.J and W_a = P0*J_a + (P x K)_a."""
    w0 = BlockOp.zero(rep.blocks, rep.dim)
    for pg, jg in zip(rep.p, rep.j):
        w0 = w0 + pg * jg
    ws = []
    for a in (1, 2, 3):
        b, c = _CYCLIC[a]
        w = rep.p0 * rep.j[a - 1] + rep.p[b - 1] * rep.k[c - 1] \
            - rep.p[c - 1] * rep.k[b - 1]
        ws.append(w)
    return (w0, ws[0], ws[1], ws[2])


def spin_squared_operator(rep: RepSpec) -> BlockOp:
    w0, w1, w2, w3 = pauli_lubanski(rep)
    return w0 * w0 - w1 * w1 - w2 * w2 - w3 * w3


def _mu_squared_times(c: Fraction, blocks: int, dim: int) -> BlockOp:
    coeff = Coefficient(Poly({(2, 0, 0, 0, 0): Scalar.from_rational(c)}))
    return BlockOp.identity(blocks, dim).scale(coeff)


def verify_casimirs(rep: RepSpec) -> RelationReport:
    """Both invariant operators against their closed forms."""
    rpt = RelationReport(rep.label, rep.two_s)
    mass = mass_squared_operator(rep)
    diff = mass - _mu_squared_times(Fraction(1), rep.blocks, rep.dim)
    ok = diff.is_zero()
    rpt.add("P0^2 - P.P == mu^2", "symbolic", ok,
            "" if ok else _truncate(f"residual {diff!r}"))
    spin_val = -SpinWeight(rep.two_s).casimir
    spin = spin_squared_operator(rep)
    diff = spin - _mu_squared_times(spin_val, rep.blocks, rep.dim)
    ok = diff.is_zero()
    target = "0" if spin_val == 0 else f"{spin_val}*mu^2"
    rpt.add(f"W.W == {target}", "symbolic", ok,
            "" if ok else _truncate(f"residual {diff!r}"))
    return rpt


def allowed_spectra(theta_kind: str, pi_kind: str) -> set[str]:
    """Energy-sign patterns an irreducible entry can have, by operator kind.

    A unitary Theta or an antiunitary Pi anticommutes with P0 and so maps
    the positive-energy subspace onto the negative one; either forces a
    sign-symmetric spectrum.  When instead Theta is antiunitary and Pi is
    unitary, both commute with P0, every generator preserves the energy
    sign, and a sign-symmetric space would split; irreducibility then
    forces a one-sided spectrum.
    """
    if theta_kind == UNITARY or pi_kind == ANTIUNITARY:
        return {"symmetric"}
    return {"up", "down"}


def verify_spectrum(rep: RepSpec) -> RelationReport:
    rpt = RelationReport(rep.label, rep.two_s)
    derived = _spectrum_from_signs(rep.p0_signs)
    allowed = allowed_spectra(rep.theta_kind, rep.pi_kind)
    ok = rep.spectrum == derived and rep.spectrum in allowed
    rpt.add(
        "spectrum-consistency", "symbolic", ok,
        f"theta {rep.theta_kind}, pi {rep.pi_kind} permit {sorted(allowed)}; "
        f"energy signs {rep.p0_signs} give {derived}",
    )
    return rpt


def full_verification(rep: RepSpec) -> RelationReport:
    rpt = RelationReport(rep.label, rep.two_s)
    rpt.extend(verify_lie_relations(rep))
    rpt.extend(verify_discrete_relations(rep))
    rpt.extend(verify_casimirs(rep))
    rpt.extend(verify_self_adjointness(rep))
    rpt.extend(verify_spectrum(rep))
    return rpt
