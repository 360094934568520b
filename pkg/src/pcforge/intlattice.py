"""Integer matrices and full-rank lattice quotients Z^d / L.

The maximal-class construction needs the module Z^{p-1} / (T - I)^{n-1} Z^{p-1}
where T is a companion matrix.  That only requires exact integer row
reduction (Hermite normal form) and canonical residue vectors, so the
implementation is self-contained.
"""

from __future__ import annotations

from typing import Sequence


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    n, k, m = len(a), len(b), len(b[0])
    assert all(len(row) == k for row in a)
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def mat_pow(a: Sequence[Sequence[int]], e: int) -> list[list[int]]:
    n = len(a)
    result = identity_matrix(n)
    base = [list(row) for row in a]
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_sub(a, b) -> list[list[int]]:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def companion_matrix(coeffs: Sequence[int]) -> list[list[int]]:
    """Companion matrix of x^d + c_{d-1} x^{d-1} + ... + c_0, coeffs = (c_0..c_{d-1}).

    Acts on row vectors from the right: e_i -> e_{i+1}, e_d -> -(c_0, ..., c_{d-1}).
    """
    d = len(coeffs)
    m = [[0] * d for _ in range(d)]
    for i in range(d - 1):
        m[i][i + 1] = 1
    for j in range(d):
        m[d - 1][j] = -coeffs[j]
    return m


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style HNF of a full-row-rank square integer matrix.

    Upper triangular, positive diagonal, entries above each pivot reduced into
    [0, pivot).  Euclidean row reduction; fine for the tiny matrices used here.
    """
    d = len(rows)
    m = [list(r) for r in rows]
    for col in range(d):
        # euclidean elimination below the diagonal
        while True:
            nz = [r for r in range(col, d) if m[r][col] != 0]
            if not nz:
                raise ValueError("matrix is singular; lattice must have full rank")
            r0 = min(nz, key=lambda r: abs(m[r][col]))
            if m[r0][col] < 0:
                m[r0] = [-x for x in m[r0]]
            m[col], m[r0] = m[r0], m[col]
            done = True
            for r in range(col + 1, d):
                q = m[r][col] // m[col][col]
                if q:
                    m[r] = [x - q * y for x, y in zip(m[r], m[col])]
                if m[r][col]:
                    done = False
            if done:
                break
        # reduce entries above the pivot
        for r in range(col):
            q = m[r][col] // m[col][col]
            if q:
                m[r] = [x - q * y for x, y in zip(m[r], m[col])]
    return m


class LatticeQuotient:
    """The finite abelian group Z^d / L for a full-rank lattice L given by basis rows."""

    def __init__(self, basis_rows: Sequence[Sequence[int]]):
        self.dim = len(basis_rows)
        self.hnf = hermite_normal_form(basis_rows)
        self.order = 1
        for i in range(self.dim):
            self.order *= self.hnf[i][i]

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Canonical residue of vec modulo the lattice."""
        v = list(vec)
        for i in range(self.dim):
            q = v[i] // self.hnf[i][i]
            if q:
                for j in range(i, self.dim):
                    v[j] -= q * self.hnf[i][j]
        return tuple(v)

    def contains(self, vec: Sequence[int]) -> bool:
        return not any(self.reduce(vec))

    def elements(self):
        """All canonical residues, lexicographic.

        reduce() lands in the box prod_i [0, hnf[i][i]) and fixes every vector
        already inside it, so the box is a complete set of residues.
        """
        import itertools

        ranges = [range(self.hnf[i][i]) for i in range(self.dim)]
        yield from itertools.product(*ranges)

    def additive_order(self, vec: Sequence[int], p: int) -> int:
        """Smallest p-power q with q*vec in L."""
        q = 1
        v = tuple(vec)
        while not self.contains([q * x for x in v]):
            q *= p
            if q > self.order:
                raise ValueError("vector order does not divide the group order")
        return q
