"""Maximal-class groups, the psi epimorphisms, and refinement series."""

import pytest

from pcforge.maxclass import (
    MaxClassGroup,
    exponent_profile,
    gamma_series_P,
    has_p2_centralizer_element,
    is_maximal_class,
    is_maximal_class_concrete,
    maximal_class_group,
    outside_orders_all_p,
    psi,
    refinement_series,
    to_pc_presentation,
)
from pcforge.pquotient import FpPresentation, kernel_meet_layer, p_quotient

from conftest import make_h_presentation


def test_group_axioms_sampled():
    import random

    P = maximal_class_group(3, 5)
    rng = random.Random(4)
    els = list(P.elements())
    for _ in range(300):
        x, y, z = (rng.choice(els) for _ in range(3))
        assert P.mul(P.mul(x, y), z) == P.mul(x, P.mul(y, z))
        assert P.mul(x, P.inv(x)) == P.identity
        assert P.mul(P.inv(x), x) == P.identity
        assert P.mul(x, P.identity) == x


def test_orders_and_sizes():
    for p, n in [(3, 4), (3, 5), (3, 6), (5, 3), (5, 4)]:
        P = maximal_class_group(p, n)
        assert P.order == p**n
        assert len(set(P.elements())) == p**n
        assert len(P.abelian_part()) == p ** (n - 1)


@pytest.mark.parametrize("p,n", [(3, 4), (3, 5), (3, 6), (5, 3), (5, 4)])
def test_all_outside_elements_have_order_p(p, n):
    assert outside_orders_all_p(maximal_class_group(p, n))


def test_gamma_series_sizes():
    P = maximal_class_group(3, 5)
    gammas = gamma_series_P(P)
    assert [len(g) for g in gammas] == [3**5, 27, 9, 3, 1]


@pytest.mark.parametrize("p,n", [(3, 4), (3, 5), (3, 6), (5, 3), (5, 4)])
def test_exponent_profile(p, n):
    for i, exp, matches, attained in exponent_profile(maximal_class_group(p, n)):
        assert matches, (p, n, i, exp)
        assert attained, (p, n, i)


def test_exp_p1_and_derived_at_3_5():
    P = maximal_class_group(3, 5)
    profile = dict((i, exp) for i, exp, _, _ in exponent_profile(P))
    assert profile[1] == 9  # exp P_1 = 3^ceil(4/2)
    assert profile[2] == 9  # exp P' = 3^2, the invariant the comparison uses


def test_is_maximal_class():
    P = maximal_class_group(3, 5)
    assert is_maximal_class_concrete(P, P.gens)
    assert has_p2_centralizer_element(P)
    h = make_h_presentation()
    assert not is_maximal_class(h)
    heis, _ = p_quotient(FpPresentation.free_product(3), 3, 3)
    assert is_maximal_class(heis)  # order p^3, class 2
    big, _ = p_quotient(FpPresentation.free_product(3), 3, 5)
    assert not is_maximal_class(big)


def test_theta_annihilation():
    # s-conjugation sums to the trivial action: (sa)^p = 1 for all a
    for p, n in [(3, 5), (5, 3)]:
        P = maximal_class_group(p, n)
        for a in P.lattice.elements():
            assert P.element_order((1, a)) == p


@pytest.mark.parametrize("p,n", [(5, 3), (5, 4), (3, 5), (3, 6)])
def test_psi_accepted_and_surjective(p, n):
    stage, (u, v) = p_quotient(FpPresentation.free_product(p), p, n)
    P = maximal_class_group(p, n)
    h = psi(stage, (u, v), P)
    assert h.ok
    assert h.is_surjective()
    # u*v maps to s1, whose order matches o(uv)
    uv = stage.mul(u, v)
    assert h(uv) == P.s1
    assert P.element_order(P.s1) == stage.element_order(uv)


def test_psi_with_s1_in_derived_not_surjective():
    from pcforge.pquotient import Homomorphism

    stage, (u, v) = p_quotient(FpPresentation.free_product(3), 3, 5)
    P = maximal_class_group(3, 5)
    gammas = gamma_series_P(P)
    derived_el = sorted(gammas[1] - {P.identity})[0]
    h = Homomorphism(stage, P, [P.inv(P.s), P.mul(P.s, derived_el)], transport=True)
    assert h.ok
    assert not h.is_surjective()


def test_kernel_meet_layer_index_three():
    stage, (u, v) = p_quotient(FpPresentation.free_product(3), 3, 5)
    P = maximal_class_group(3, 5)
    h = psi(stage, (u, v), P)
    K = kernel_meet_layer(h, 5)
    layer = stage.weight_subgroup(4)
    assert layer.order == 9
    assert K.order == 3


def test_refinement_series_n5():
    series = refinement_series(5)
    assert series.layer_order == 9 and series.kernel_layer_order == 3
    assert len(series.terms) == 2
    orders = [t.quotient.order for t in series.terms]
    assert orders == [3**7, 3**6]
    for term in series.terms:
        assert term.certificate.verdict
        assert term.certificate.verify()


def test_to_pc_presentation_roundtrip():
    for p, n in [(3, 4), (5, 3)]:
        P = maximal_class_group(p, n)
        pm = to_pc_presentation(P)
        assert pm.pcp.order == P.order
        assert pm.pcp.is_consistent()
        assert is_maximal_class(pm.pcp)


def test_construction_guards():
    with pytest.raises(ValueError):
        maximal_class_group(2, 4)
    with pytest.raises(ValueError):
        maximal_class_group(3, 2)
    with pytest.raises(ValueError):
        refinement_series(4)
