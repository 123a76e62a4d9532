"""Dense linear algebra over F_q on lists of element codes.

Matrices are lists of rows; vectors are tuples.  Sizes here never exceed a
handful of rows, so plain Python beats numpy's per-call overhead.
"""
from __future__ import annotations

from typing import Sequence

from .gf import FieldSpec

Vector = tuple[int, ...]


def rref(rows: Sequence[Sequence[int]], F: FieldSpec) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    mat = [list(r) for r in rows]
    if not mat:
        return mat, []
    ncols = len(mat[0])
    add, mul, neg, inv = F._lists[0], F._lists[1], F._lists[2], F._lists[3]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        s = inv[mat[r][c]]
        if s != 1:
            mat[r] = [mul[s][x] for x in mat[r]]
        row = mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = neg[mat[i][c]]
                other = mat[i]
                mat[i] = [add[x][mul[f][y]] for x, y in zip(other, row)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence[int]], F: FieldSpec) -> int:
    return len(rref(rows, F)[1])


def kernel(rows: Sequence[Sequence[int]], ncols: int, F: FieldSpec) -> list[Vector]:
    """Basis of {x : A x = 0}."""
    red, pivots = rref(rows, F) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    neg = F._lists[2]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(red, pivots):
            v[pc] = neg[row[fc]]
        basis.append(tuple(v))
    return basis


def row_space(rows: Sequence[Sequence[int]], F: FieldSpec) -> list[Vector]:
    return [tuple(r) for r in rref(rows, F)[0]]


def complement(basis: Sequence[Sequence[int]], dim: int, F: FieldSpec) -> list[Vector]:
    """Standard basis vectors extending ``basis`` to a basis of F_q^dim."""
    red, pivots = rref(basis, F) if basis else ([], [])
    return [tuple(1 if i == c else 0 for i in range(dim)) for c in range(dim) if c not in pivots]


def intersect(u: Sequence[Sequence[int]], w: Sequence[Sequence[int]], dim: int,
              F: FieldSpec) -> list[Vector]:
    """Basis of span(u) ∩ span(w)."""
    if not u or not w:
        return []
    # a·U = b·W  <=>  (a, -b) in ker [U^T | -W^T]
    neg = F._lists[2]
    system = [[vec[i] for vec in u] + [neg[vec[i]] for vec in w] for i in range(dim)]
    sols = kernel(system, len(u) + len(w), F)
    add, mul = F._lists[0], F._lists[1]
    out = []
    for s in sols:
        v = [0] * dim
        for a, vec in zip(s[:len(u)], u):
            if a:
                v = [add[x][mul[a][y]] for x, y in zip(v, vec)]
        out.append(tuple(v))
    return row_space(out, F)


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], F: FieldSpec) -> list[list[int]]:
    add, mul = F._lists[0], F._lists[1]
    cols = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in cols:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = add[acc][mul[x][y]]
            out_row.append(acc)
        out.append(out_row)
    return out


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int], F: FieldSpec) -> Vector:
    return tuple(r[0] for r in mat_mul(a, [[x] for x in v], F))


def inverse(a: Sequence[Sequence[int]], F: FieldSpec) -> list[list[int]]:
    n = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(aug, F)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def is_invertible(a: Sequence[Sequence[int]], F: FieldSpec) -> bool:
    return rank(a, F) == len(a)


def random_invertible(dim: int, F: FieldSpec, rng) -> list[list[int]]:
    while True:
        a = [[int(x) for x in rng.integers(0, F.q, size=dim)] for _ in range(dim)]
        if is_invertible(a, F):
            return a
