"""Exact dense linear algebra over a cyclotomic field.

Matrices are lists of row lists of CycNum.  Everything here is small and
dense; the routines favour clarity and determinism over asymptotics.
"""

from __future__ import annotations

from .cyclotomic import CyclotomicField, CycNum


class SingularMatrixError(ValueError):
    """A matrix required to be invertible is singular."""


def rref(rows: list[list[CycNum]], field: CyclotomicField):
    """Reduced row echelon form.

    Returns (reduced rows without zero rows, pivot column indices).  Pivots
    are scaled to 1 with zeros above and below, so the output is canonical
    for the row space.
    """
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = mat[r][c].inverse()
        mat[r] = [e * inv for e in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: list[list[CycNum]], field: CyclotomicField) -> int:
    return len(rref(rows, field)[0])


def reduce_against(vec: list[CycNum], basis: list[list[CycNum]],
                   pivots: list[int]) -> list[CycNum]:
    """Reduce a vector modulo an RREF basis; zero result means membership."""
    out = list(vec)
    for row, p in zip(basis, pivots):
        c = out[p]
        if c:
            out = [a - c * b for a, b in zip(out, row)]
    return out


def in_row_space(vec: list[CycNum], basis: list[list[CycNum]],
                 pivots: list[int]) -> bool:
    return not any(reduce_against(vec, basis, pivots))


def invert(rows: list[list[CycNum]], field: CyclotomicField) -> list[list[CycNum]]:
    """Inverse of a square matrix via Gauss-Jordan on the augmented matrix."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    zero, one = field.zero, field.one
    aug = [list(r) + [one if i == j else zero for j in range(n)]
           for i, r in enumerate(rows)]
    red, pivots = rref(aug, field)
    if len(red) != n or pivots != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in red]


def nullspace(rows: list[list[CycNum]], field: CyclotomicField,
              ncols: int) -> list[list[CycNum]]:
    """Basis of the right kernel, one vector per free column."""
    red, pivots = rref(rows, field)
    zero, one = field.zero, field.one
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for row, p in zip(red, pivots):
            vec[p] = -row[fc]
        basis.append(vec)
    return basis
