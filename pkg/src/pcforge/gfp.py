"""Exact linear algebra over GF(p) on plain integer lists.

Row operations only, deterministic pivoting (lowest column index first),
so echelonized output is reproducible bit-for-bit.  Sizes here are tiny
(a few dozen rows at most), which is why this is not numpy.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def rref(rows: Iterable[Sequence[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form mod p.

    Returns (reduced nonzero rows, pivot column per row).  Pivot entries are
    normalized to 1 and cleared above and below.
    """
    mat = [[x % p for x in row] for row in rows]
    for row in mat:
        if len(row) != ncols:
            raise ValueError("row length mismatch")
    out: list[list[int]] = []
    pivots: list[int] = []
    col = 0
    while mat and col < ncols:
        pivot_row = None
        for r, row in enumerate(mat):
            if row[col]:
                pivot_row = r
                break
        if pivot_row is None:
            col += 1
            continue
        row = mat.pop(pivot_row)
        inv = pow(row[col], -1, p)
        row = [(inv * x) % p for x in row]
        for other in out:
            c = other[col]
            if c:
                for j in range(col, ncols):
                    other[j] = (other[j] - c * row[j]) % p
        for other in mat:
            c = other[col]
            if c:
                for j in range(col, ncols):
                    other[j] = (other[j] - c * row[j]) % p
        out.append(row)
        pivots.append(col)
        col += 1
    # rows that became zero are dropped; out is sorted by pivot already
    return out, pivots


def rank(rows: Iterable[Sequence[int]], ncols: int, p: int) -> int:
    return len(rref(rows, ncols, p)[0])


def nullspace(rows: Iterable[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of the right nullspace {v : M v = 0}, echelonized, deterministic."""
    red, pivots = rref(rows, ncols, p)
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[fc]) % p
        basis.append(v)
    return basis


def in_rowspace(vec: Sequence[int], red_rows: Sequence[Sequence[int]], pivots: Sequence[int], p: int) -> bool:
    """Membership test against an already-reduced row space."""
    v = [x % p for x in vec]
    for row, pc in zip(red_rows, pivots):
        c = v[pc]
        if c:
            for j in range(len(v)):
                v[j] = (v[j] - c * row[j]) % p
    return not any(v)


def solve_affine(rows: Sequence[Sequence[int]], rhs: Sequence[int], p: int) -> list[int] | None:
    """One solution x of M x = rhs mod p, or None.  Free variables are set to 0."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1, p)
    x = [0] * ncols
    for row, pc in zip(red, pivots):
        if pc == ncols:
            return None
        x[pc] = row[ncols]
    return x
