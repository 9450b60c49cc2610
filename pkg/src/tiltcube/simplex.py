"""Exact rational primal simplex for  max c.x  s.t.  A x <= b, x >= 0, with b >= 0.

The slack basis is feasible because b >= 0, so no phase one is needed.
Pivoting follows Bland's rule, which rules out cycling.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"


@dataclass
class SimplexResult:
    status: str
    value: Optional[Fraction]
    x: list
    dual: list
    # rows of the final tableau restricted to structural+slack columns, with
    # reduced costs; used for the uniqueness test
    tableau: list
    rhs: list
    reduced: list
    basis: list
    pivots: int


def simplex_max(c: Sequence, A: Sequence[Sequence], b: Sequence) -> SimplexResult:
    m, nv = len(A), len(c)
    if any(Fraction(v) < 0 for v in b):
        raise ValueError("right-hand sides must be nonnegative")
    width = nv + m
    T = []
    for i, row in enumerate(A):
        if len(row) != nv:
            raise ValueError("constraint row has wrong length")
        r = [Fraction(v) for v in row] + [Fraction(0)] * m
        r[nv + i] = Fraction(1)
        T.append(r)
    rhs = [Fraction(v) for v in b]
    # z-row: z_j = c_B B^-1 A_j - c_j; a negative entry marks an improving column
    z = [-Fraction(v) for v in c] + [Fraction(0)] * m
    basis = list(range(nv, nv + m))
    pivots = 0
    while True:
        col = next((j for j in range(width) if z[j] < 0), None)
        if col is None:
            break
        best_row, best_ratio = None, None
        for i in range(m):
            a = T[i][col]
            if a > 0:
                ratio = rhs[i] / a
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[best_row])):
                    best_row, best_ratio = i, ratio
        if best_row is None:
            return SimplexResult(UNBOUNDED, None, [], [], T, rhs, z, basis, pivots)
        _pivot(T, rhs, z, best_row, col)
        basis[best_row] = col
        pivots += 1
    value = sum((Fraction(c[basis[i]]) * rhs[i] for i in range(m) if basis[i] < nv), Fraction(0))
    x = [Fraction(0)] * nv
    for i in range(m):
        if basis[i] < nv:
            x[basis[i]] = rhs[i]
    dual = z[nv:nv + m]
    return SimplexResult(OPTIMAL, value, x, dual, T, rhs, z, basis, pivots)


def _pivot(T, rhs, z, r, col):
    piv = T[r][col]
    row = T[r]
    if piv != 1:
        inv = 1 / piv
        for j in range(len(row)):
            if row[j]:
                row[j] *= inv
        rhs[r] *= inv
    nz = [j for j in range(len(row)) if row[j]]
    for i in range(len(T)):
        if i == r:
            continue
        f = T[i][col]
        if f:
            ti = T[i]
            for j in nz:
                ti[j] -= f * row[j]
            rhs[i] -= f * rhs[r]
    f = z[col]
    if f:
        for j in nz:
            z[j] -= f * row[j]


def optimum_is_unique(res: SimplexResult) -> bool:
    """Whether the optimal face of a solved LP is a single point.

    Along the optimal face every nonbasic column with a positive reduced cost
    stays at zero, so the face is {t >= 0 on the zero-reduced-cost columns Z :
    T_Z t <= rhs}.  It is a single point iff max sum(t) over it is zero.
    """
    if res.status != OPTIMAL:
        raise ValueError("uniqueness is only defined at an optimum")
    basic = set(res.basis)
    zero = [j for j in range(len(res.reduced)) if j not in basic and res.reduced[j] == 0]
    if not zero:
        return True
    aux_A = [[row[j] for j in zero] for row in res.tableau]
    aux = simplex_max([1] * len(zero), aux_A, res.rhs)
    return aux.status == OPTIMAL and aux.value == 0
