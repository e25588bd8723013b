"""Momentum-grid numerical cross-checks of the symbolic algebra.

Wavefunctions are sampled on a uniform cube [-L, L]^3 that is symmetric
about the origin, so the reflection Y is an exact index reversal and
conjugation is exact; derivatives use second-order central differences
with the boundary planes zeroed (test states must vanish at the boundary
to 1e-12 of peak, so those rows never matter).  Multiplication operators
evaluate their exact coefficients at a numeric mu carried by the grid.

The numeric layer complements the symbolic one: relations whose finite
difference errors cancel identically come out at rounding level, and
derivative-bearing relations converge at the stencil order (slope 2 in
log-residual vs log-spacing).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .catalog import LIE_RELATIONS, RepSpec, discrete_relations
from .spin_algebra import SpinWeight
from .symop import BlockOp

EXACT_TOL = 1e-12
SLOPE_BAND = (1.7, 2.3)
_RATIO_BAND = (0.35, 0.65)


@dataclass(frozen=True)
class Grid:
    """Uniform cube [-extent, extent]^3 with points**3 vertices."""

    extent: float
    points: int
    mu: float = 1.0

    def __post_init__(self):
        if self.points < 8:
            raise ValueError("grid needs at least 8 points per axis")
        if not (self.extent > 0 and math.isfinite(self.extent)):
            raise ValueError("grid extent must be positive and finite")
        if not (self.mu > 0 and math.isfinite(self.mu)):
            raise ValueError("mu must be positive and finite")

    @property
    def spacing(self) -> float:
        return 2 * self.extent / (self.points - 1)

    def axis(self) -> np.ndarray:
        return np.linspace(-self.extent, self.extent, self.points)


@lru_cache(maxsize=8)
def _meshes(grid: Grid):
    ax = grid.axis()
    p1, p2, p3 = np.meshgrid(ax, ax, ax, indexing="ij")
    p0 = np.sqrt(grid.mu**2 + p1**2 + p2**2 + p3**2)
    return p1, p2, p3, p0


@dataclass(frozen=True)
class GridState:
    values: np.ndarray  # (blocks, N, N, N, 2s+1) complex
    grid: Grid
    spin: SpinWeight
    blocks: int

    def __post_init__(self):
        n = self.grid.points
        expected = (self.blocks, n, n, n, self.spin.dim)
        if self.values.shape != expected:
            raise ValueError(
                f"state shape {self.values.shape} does not match {expected}"
            )
        if not np.all(np.isfinite(self.values.view(np.float64))):
            raise ValueError("state contains non-finite entries")


def inner(a: GridState, b: GridState) -> complex:
    """Inner product with the 1/p0 weight."""
    if a.grid != b.grid or a.values.shape != b.values.shape:
        raise ValueError("mismatched states")
    p0 = _meshes(a.grid)[3]
    w = (np.conj(a.values) * b.values).sum(axis=(0, 4)) / p0
    return complex(w.sum() * a.grid.spacing**3)


def norm(state: GridState) -> float:
    return math.sqrt(max(inner(state, state).real, 0.0))


def _values_norm(values: np.ndarray, grid: Grid) -> float:
    p0 = _meshes(grid)[3]
    w = (np.abs(values) ** 2).sum(axis=(0, 4)) / p0
    return math.sqrt(float(w.sum()) * grid.spacing**3)


def sample_gaussian(grid: Grid, center, width: float, spinor) -> GridState:
    """Normalized Gaussian bump times a constant per-block spinor.

    The tail at the nearest boundary face must be below 1e-12 of the
    peak so central differences never touch meaningful boundary data.
    """
    if width <= 0:
        raise ValueError("width must be positive")
    center = np.asarray(center, dtype=float)
    if center.shape != (3,):
        raise ValueError("center must be a 3-vector")
    spinor = np.asarray(spinor, dtype=complex)
    if spinor.ndim != 2:
        raise ValueError("spinor must have shape (blocks, 2s+1)")
    if not spinor.any():
        raise ValueError("spinor is identically zero: null state")
    margin = float(min(grid.extent - abs(c) for c in center))
    tail = math.exp(-(margin**2) / (2 * width**2)) if margin > 0 else 1.0
    if tail >= EXACT_TOL:
        raise ValueError(
            f"boundary tail {tail:.2e} exceeds 1e-12 of peak; "
            "shrink width or recenter"
        )
    blocks, dim = spinor.shape
    p1, p2, p3, _ = _meshes(grid)
    bump = np.exp(
        -((p1 - center[0]) ** 2 + (p2 - center[1]) ** 2 + (p3 - center[2]) ** 2)
        / (2 * width**2)
    )
    values = np.einsum("xyz,bm->bxyzm", bump, spinor).astype(complex)
    state = GridState(values, grid, SpinWeight(dim - 1), blocks)
    n = norm(state)
    return GridState(values / n, grid, state.spin, blocks)


def _central_diff(arr: np.ndarray, axis: int, h: float) -> np.ndarray:
    out = np.zeros_like(arr)
    mid = [slice(None)] * arr.ndim
    hi = list(mid)
    lo = list(mid)
    mid[axis] = slice(1, -1)
    hi[axis] = slice(2, None)
    lo[axis] = slice(None, -2)
    out[tuple(mid)] = (arr[tuple(hi)] - arr[tuple(lo)]) / (2 * h)
    return out


def apply(op: BlockOp, state: GridState) -> GridState:
    """Apply an exact operator numerically."""
    if op.dim != state.spin.dim or op.blocks != state.blocks:
        raise ValueError("operator shape does not match the state")
    g = state.grid
    p1, p2, p3, p0 = _meshes(g)
    out = np.zeros_like(state.values)
    for br in range(op.blocks):
        for bc in range(op.blocks):
            sop = op.entries[br][bc]
            if sop.is_zero():
                continue
            src = state.values[bc]
            for (alpha, u, k), mat in sop.terms.items():
                cur = src
                if k:
                    cur = np.conj(cur)
                if u:
                    cur = cur[::-1, ::-1, ::-1, :]
                for axis in range(3):
                    for _ in range(alpha[axis]):
                        cur = _central_diff(cur, axis, g.spacing)
                dim = sop.dim
                for m in range(dim):
                    comp = None
                    for n in range(dim):
                        c = mat[m][n]
                        if c.is_zero():
                            continue
                        val = c.eval(g.mu, p1, p2, p3, p0)
                        term = val * cur[..., n]
                        comp = term if comp is None else comp + term
                    if comp is not None:
                        out[br, ..., m] += comp
    return GridState(out, g, state.spin, state.blocks)


# -- relation residuals ---------------------------------------------------------


def relation_ids(rep: RepSpec) -> list[str]:
    return [r.name for r in LIE_RELATIONS] + [
        d.name for d in discrete_relations(rep)
    ]


def _family_ops(rep: RepSpec, fam: str) -> list[BlockOp]:
    if fam == "P0":
        return [rep.p0]
    if fam == "P":
        return list(rep.p)
    if fam == "J":
        return list(rep.j)
    if fam == "K":
        return list(rep.k)
    raise KeyError(fam)


def residual(rep: RepSpec, relation_id: str, state: GridState) -> float:
    """Relative dnu-norm residual of one relation applied to a state."""
    base = norm(state)
    for rel in LIE_RELATIONS:
        if rel.name != relation_id:
            continue
        a = rep.generator(rel.left)
        b = rep.generator(rel.right)
        lhs = apply(a, apply(b, state)).values - apply(b, apply(a, state)).values
        for coeff, key in rel.rhs:
            lhs = lhs - coeff.to_complex() * apply(rep.generator(key), state).values
        return _values_norm(lhs, state.grid) / base
    for rel in discrete_relations(rep):
        if rel.name != relation_id:
            continue
        op = rep.theta if rel.op == "theta" else rep.pi
        if rel.kind == "exchange":
            worst = 0.0
            for gen in _family_ops(rep, rel.family):
                diff = apply(op, apply(gen, state)).values \
                    - rel.sign * apply(gen, apply(op, state)).values
                worst = max(worst, _values_norm(diff, state.grid) / base)
            return worst
        if rel.kind == "square":
            diff = apply(op, apply(op, state)).values \
                - rel.value.to_complex() * state.values
            return _values_norm(diff, state.grid) / base
        diff = apply(rep.pi, apply(rep.theta, state)).values \
            - rel.value.to_complex() * apply(rep.theta, apply(rep.pi, state)).values
        return _values_norm(diff, state.grid) / base
    raise ValueError(f"unknown relation id: {relation_id}")


def standard_state(rep: RepSpec, grid: Grid) -> GridState:
    """Deterministic admissible Gaussian used by studies and the cli."""
    ext = grid.extent
    center = (ext / 12, -ext / 15, ext / 18)
    width = ext / 9
    dim = rep.two_s + 1
    spinor = np.array(
        [
            [
                (1 + 0.3 * b + 0.1 * m) + (0.2 + 0.15 * m - 0.05 * b) * 1j
                for m in range(dim)
            ]
            for b in range(rep.blocks)
        ]
    )
    return sample_gaussian(grid, center, width, spinor)


@dataclass(frozen=True)
class NumericReport:
    relation: str
    sizes: tuple[int, ...]
    spacings: tuple[float, ...]
    residuals: tuple[float, ...]
    slope: float | None
    exact: bool
    ok: bool

    def detail(self) -> str:
        res = ", ".join(f"{r:.3e}" for r in self.residuals)
        if self.exact:
            return f"exact (residuals {res})"
        return f"slope {self.slope:.3f} (residuals {res})"

    def as_dict(self) -> dict:
        return {
            "relation": self.relation,
            "sizes": list(self.sizes),
            "spacings": list(self.spacings),
            "residuals": list(self.residuals),
            "slope": self.slope,
            "exact": self.exact,
            "ok": self.ok,
        }


def convergence_study(rep: RepSpec, relation_id: str, grids) -> NumericReport:
    """Residuals across a refining grid sequence plus a slope fit.

    Requires at least three grids with spacing roughly halving between
    consecutive entries.  All-tiny residuals are flagged exact instead
    of fitted.
    """
    grids = sorted(grids, key=lambda g: -g.spacing)
    if len(grids) < 3:
        raise ValueError("non-nested grid sequence: need at least three grids")
    for a, b in zip(grids, grids[1:]):
        ratio = b.spacing / a.spacing
        if not (_RATIO_BAND[0] <= ratio <= _RATIO_BAND[1]):
            raise ValueError(
                f"non-nested grid sequence: spacing ratio {ratio:.3f} "
                f"outside {_RATIO_BAND}"
            )
    residuals = []
    for g in grids:
        state = standard_state(rep, g)
        residuals.append(residual(rep, relation_id, state))
    exact = all(r < EXACT_TOL for r in residuals)
    if exact:
        slope = None
        ok = True
    else:
        logs_h = np.log([g.spacing for g in grids])
        logs_r = np.log(residuals)
        slope = float(np.polyfit(logs_h, logs_r, 1)[0])
        ok = SLOPE_BAND[0] <= slope <= SLOPE_BAND[1]
    return NumericReport(
        relation=relation_id,
        sizes=tuple(g.points for g in grids),
        spacings=tuple(g.spacing for g in grids),
        residuals=tuple(residuals),
        slope=slope,
        exact=exact,
        ok=ok,
    )


def representative_relations(rep: RepSpec) -> list[str]:
    """One bracket relation per family plus every discrete relation."""
    heads = [
        "[P1,P2] == 0",
        "[J1,P2] == i*P3",
        "[J1,J2] == i*J3",
        "[J1,K2] == i*K3",
        "[K1,K2] == -i*J3",
        "[K1,P1] == i*P0",
        "[P1,P0] == 0",
        "[J1,P0] == 0",
        "[K1,P0] == i*P1",
    ]
    return heads + [d.name for d in discrete_relations(rep)]


def isometry_defect(rep: RepSpec, state: GridState) -> dict[str, float]:
    """Relative norm change under Theta and Pi (0 for exact isometries)."""
    base = norm(state)
    return {
        "Theta": abs(norm(apply(rep.theta, state)) - base) / base,
        "Pi": abs(norm(apply(rep.pi, state)) - base) / base,
    }
