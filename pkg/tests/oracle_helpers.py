"""Shared sympy bridge for oracle tests.

Exact conversion of engine scalars, polynomials, and coefficients into
sympy expressions with the energy written out as sqrt(mu^2 + |q|^2), so
expected values are produced by sympy rather than by the engine itself.
"""

import sympy as sp

from poincarelab.exactnum import Scalar
from poincarelab.symop import Coefficient, Poly, ScalarOp

MU = sp.Symbol("mu", positive=True)
Q1, Q2, Q3 = sp.symbols("q1 q2 q3", real=True)
Q0 = sp.sqrt(MU**2 + Q1**2 + Q2**2 + Q3**2)
QVARS = (Q1, Q2, Q3)
_BASES = (MU, Q1, Q2, Q3, Q0)


def scalar_to_sympy(s: Scalar):
    out = sp.Integer(0)
    for n, (re, im) in s.terms.items():
        out += (sp.Rational(re) + sp.I * sp.Rational(im)) * sp.sqrt(n)
    return out


def poly_to_sympy(poly: Poly):
    out = sp.Integer(0)
    for mono, c in poly.terms.items():
        term = scalar_to_sympy(c)
        for base, e in zip(_BASES, mono):
            if e:
                term *= base**e
        out += term
    return out


def coeff_to_sympy(c: Coefficient):
    return poly_to_sympy(c.num) / (Q0**c.a * (MU + Q0) ** c.b)


def generic_functions(dim: int, tag: str = "f"):
    return [sp.Function(f"{tag}{m}")(Q1, Q2, Q3) for m in range(dim)]


def op_action(sop: ScalarOp, funcs):
    """Apply a linear (no reflection/conjugation) operator symbolically."""
    out = [sp.Integer(0)] * sop.dim
    for (alpha, u, k), mat in sop.terms.items():
        if u or k:
            raise ValueError("op_action handles linear terms only")
        dfuncs = []
        for f in funcs:
            g = f
            for var, n in zip(QVARS, alpha):
                for _ in range(n):
                    g = sp.diff(g, var)
            dfuncs.append(g)
        for m in range(sop.dim):
            for n_ in range(sop.dim):
                c = mat[m][n_]
                if not c.is_zero():
                    out[m] += coeff_to_sympy(c) * dfuncs[n_]
    return out


def all_zero(exprs) -> bool:
    return all(sp.simplify(e) == 0 for e in exprs)


def dense_commutant_dimension(rep) -> int:
    """Numeric oracle: real dimension of the self-adjoint commutant.

    Parametrizes a full complex block matrix (no self-adjoint
    reduction), realifies every constraint, and counts the nullspace
    with an SVD, so it shares nothing with the exact solver.
    """
    import numpy as np
    from scipy.linalg import null_space

    B = rep.blocks

    def np_pattern(pattern):
        return np.array([[x.to_complex() for x in row] for row in pattern])

    tp, pp = np_pattern(rep.theta_pattern), np_pattern(rep.pi_pattern)
    t_anti = rep.theta_kind == "antiunitary"
    p_anti = rep.pi_kind == "antiunitary"

    def constraint_block(Z):
        out = [Z - Z.conj().T]
        zero = np.zeros_like(Z)
        for r in range(B):
            for c in range(B):
                if (rep.p0_signs[r] != rep.p0_signs[c]
                        or rep.k_signs[r] != rep.k_signs[c]):
                    e = zero.copy()
                    e[r, c] = Z[r, c]
                    out.append(e)
        out.append(Z @ tp - tp @ (Z.conj() if t_anti else Z))
        out.append(Z @ pp - pp @ (Z.conj() if p_anti else Z))
        flat = np.concatenate([m.ravel() for m in out])
        return np.concatenate([flat.real, flat.imag])

    cols = []
    for r in range(B):
        for c in range(B):
            for val in (1.0, 1.0j):
                Z = np.zeros((B, B), dtype=complex)
                Z[r, c] = val
                cols.append(constraint_block(Z))
    mat = np.array(cols).T
    return null_space(mat, rcond=1e-10).shape[1]
