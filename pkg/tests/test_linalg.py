"""GF(p) echelon forms and integer lattice quotients."""

import itertools
import random

from pcforge import gfp, intlattice


def test_rref_and_rank():
    rows = [[1, 2, 0], [2, 4, 1], [0, 0, 2]]
    red, pivots = gfp.rref(rows, 3, 5)
    assert pivots == [0, 2]
    assert red[0][0] == 1 and red[1][2] == 1
    assert gfp.rank(rows, 3, 5) == 2
    assert gfp.rank([[0, 0]], 2, 3) == 0


def test_rref_reproducible():
    rng = random.Random(3)
    rows = [[rng.randrange(7) for _ in range(5)] for _ in range(4)]
    a = gfp.rref(rows, 5, 7)
    b = gfp.rref(rows, 5, 7)
    assert a == b


def test_nullspace():
    rows = [[1, 2, 3], [2, 4, 6]]
    basis = gfp.nullspace(rows, 3, 7)
    assert len(basis) == 2
    for v in basis:
        for row in rows:
            assert sum(r * x for r, x in zip(row, v)) % 7 == 0


def test_in_rowspace():
    rows = [[1, 0, 2], [0, 1, 1]]
    red, piv = gfp.rref(rows, 3, 3)
    assert gfp.in_rowspace([1, 1, 0], red, piv, 3)
    assert not gfp.in_rowspace([0, 0, 1], red, piv, 3)


def test_solve_affine():
    rows = [[1, 2], [0, 1]]
    x = gfp.solve_affine(rows, [0, 1], 5)
    assert x is not None
    assert [(r[0] * x[0] + r[1] * x[1]) % 5 for r in rows] == [0, 1]
    assert gfp.solve_affine([[0, 0]], [1], 5) is None


def test_hnf_properties():
    rng = random.Random(11)
    for _ in range(20):
        d = rng.randrange(1, 5)
        while True:
            rows = [[rng.randrange(-5, 6) for _ in range(d)] for _ in range(d)]
            try:
                h = intlattice.hermite_normal_form(rows)
                break
            except ValueError:
                continue
        for i in range(d):
            assert h[i][i] > 0
            for j in range(i):
                assert h[i][j] == 0
            for r in range(i):
                assert 0 <= h[r][i] < h[i][i]


def test_lattice_quotient_c3():
    # companion matrix of x^2 + x + 1 (third cyclotomic), (T - I)^2 lattice
    theta = intlattice.companion_matrix([1, 1])
    m = intlattice.mat_pow(intlattice.mat_sub(theta, intlattice.identity_matrix(2)), 2)
    lat = intlattice.LatticeQuotient(m)
    assert lat.order == 9
    els = list(lat.elements())
    assert len(els) == 9 and len(set(els)) == 9
    # reduce is constant on cosets
    rng = random.Random(5)
    for _ in range(50):
        v = [rng.randrange(-9, 10) for _ in range(2)]
        shift = [sum(c * m[k][j] for k, c in enumerate([rng.randrange(-3, 4), rng.randrange(-3, 4)])) for j in range(2)]
        assert lat.reduce(v) == lat.reduce([a + b for a, b in zip(v, shift)])
    # (T-I)^2 is an associate of 3 in Z[zeta_3], so the quotient is elementary
    orders = [lat.additive_order(v, 3) for v in els if any(v)]
    assert all(o == 3 for o in orders)
    # with (T-I)^4 the exponent climbs to 9 (this is exp P_1 for order 3^5)
    m4 = intlattice.mat_pow(intlattice.mat_sub(theta, intlattice.identity_matrix(2)), 4)
    lat4 = intlattice.LatticeQuotient(m4)
    assert lat4.order == 81
    orders4 = [lat4.additive_order(v, 3) for v in lat4.elements() if any(v)]
    assert set(orders4) == {3, 9}


def test_companion_matrix_satisfies_cyclotomic():
    # T^(p-1) + ... + T + I = 0 and T^p = I for the p-th cyclotomic companion matrix
    for p in (3, 5, 7):
        d = p - 1
        theta = intlattice.companion_matrix([1] * d)
        powers = [intlattice.identity_matrix(d)]
        for _ in range(d):
            powers.append(intlattice.mat_mul(powers[-1], theta))
        s = [[sum(m[i][j] for m in powers[:p]) for j in range(d)] for i in range(d)]
        assert all(x == 0 for row in s for x in row)
        assert intlattice.mat_pow(theta, p) == intlattice.identity_matrix(d)
