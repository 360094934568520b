"""Truncated series groups: composition, congruence filtration, iso search."""

import itertools
import random

import pytest

from pcforge.nottingham import (
    SeriesBasis,
    TruncGroup,
    TruncSeries,
    compose,
    excluded_levels,
    exp_of_subgroup,
    gamma_series_trunc,
    invert,
    iso_search,
    lcs_check,
    lcs_level,
    power_subgroup_check,
    series_from_str,
    series_to_str,
    subgroup_Nk,
    whole_group_basis,
)
from pcforge.pquotient import FpPresentation, p_quotient, pc_presentation_from_group

from conftest import make_h_presentation


def brute_compose(p, k, f, g):
    """Independent substitution oracle: expand f(g(t)) term by term."""
    full_f = [0, 1] + list(f)
    full_g = [0, 1] + list(g)

    def mul(a, b):
        out = [0] * (k + 1)
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                if ca and cb and i + j <= k:
                    out[i + j] = (out[i + j] + ca * cb) % p
        return out

    gpow = [1] + [0] * k
    acc = [0] * (k + 1)
    for i in range(0, k + 1):
        if i:
            gpow = mul(gpow, full_g)
        c = full_f[i] if i < len(full_f) else 0
        if c:
            for d in range(k + 1):
                acc[d] = (acc[d] + c * gpow[d]) % p
    return tuple(acc[2:])


def test_compose_identity():
    f = TruncSeries(3, 4, (1, 0, 2))
    ident = TruncSeries(3, 4, (0, 0, 0))
    assert compose(f, ident) == f
    assert compose(ident, f) == f


def test_compose_example():
    f = TruncSeries(3, 4, (1, 0, 0))  # t + t^2
    out = compose(f, f)
    assert out.coeffs == (2, 2, 1)  # t + 2t^2 + 2t^3 + t^4


def test_compose_against_brute_oracle():
    rng = random.Random(12)
    for p, k in [(3, 5), (3, 8), (5, 6)]:
        grp = TruncGroup(p, k)
        for _ in range(40):
            f = tuple(rng.randrange(p) for _ in range(k - 1))
            g = tuple(rng.randrange(p) for _ in range(k - 1))
            assert grp.mul(f, g) == brute_compose(p, k, f, g)


def test_invert_example_brute_forced():
    # exhaustive two-sided-inverse search over all 27 candidates
    grp = TruncGroup(3, 4)
    f = (1, 0, 0)
    winners = [
        g
        for g in itertools.product(range(3), repeat=3)
        if grp.mul(f, g) == grp.identity and grp.mul(g, f) == grp.identity
    ]
    assert winners == [(2, 2, 1)]  # t + 2t^2 + 2t^3 + t^4
    assert grp.inv(f) == (2, 2, 1)


def test_invert_involution_random():
    rng = random.Random(3)
    grp = TruncGroup(3, 7)
    for _ in range(200):
        f = tuple(rng.randrange(3) for _ in range(6))
        assert grp.inv(grp.inv(f)) == f
        assert grp.mul(grp.inv(f), f) == grp.identity


def test_group_axioms_exhaustive_small():
    grp = TruncGroup(3, 4)
    els = list(grp.elements())
    assert len(els) == 27
    for x in els:
        for y in els:
            for z in els[:9]:
                assert grp.mul(grp.mul(x, y), z) == grp.mul(x, grp.mul(y, z))


@pytest.mark.parametrize("k", range(2, 11))
def test_two_generators_span_everything(k):
    grp = TruncGroup(3, k)
    assert whole_group_basis(grp).order == 3 ** (k - 1)


def test_congruence_subgroups():
    grp = TruncGroup(3, 7)
    for m in range(1, 8):
        nm = subgroup_Nk(grp, m)
        assert nm.order == 3 ** (7 - m)
        assert nm.is_normal()
    with pytest.raises(ValueError):
        subgroup_Nk(grp, 0)


def test_filtration_is_central_by_stages():
    rng = random.Random(8)
    grp = TruncGroup(3, 9)
    for _ in range(60):
        a = rng.randrange(1, 5)
        b = rng.randrange(1, 5)
        f = [0] * 8
        g = [0] * 8
        for i in range(a, 8):
            f[i] = rng.randrange(3)
        for i in range(b, 8):
            g[i] = rng.randrange(3)
        f, g = tuple(f), tuple(g)
        comm = grp.mul(grp.mul(grp.mul(grp.inv(f), grp.inv(g)), f), g)
        assert grp.level(comm) >= min(grp.level(f) + grp.level(g), 9)


def test_truncation_is_homomorphism():
    rng = random.Random(21)
    big = TruncGroup(3, 9)
    small = TruncGroup(3, 5)
    for _ in range(100):
        f = tuple(rng.randrange(3) for _ in range(8))
        g = tuple(rng.randrange(3) for _ in range(8))
        assert small.mul(big.truncate(f, 5), big.truncate(g, 5)) == big.truncate(
            big.mul(f, g), 5
        )


def test_lcs_levels():
    assert [lcs_level(i, 3) for i in (2, 3, 4, 5)] == [3, 4, 6, 7]


def test_lcs_check_p3():
    rows = lcs_check(3, 10)
    by_i = {row["i"]: row for row in rows}
    assert by_i[2]["congruence_order"] == 3**7 and by_i[2]["equal"]
    assert by_i[3]["equal"]
    assert by_i[4]["equal"]  # gamma_4 = N_6
    assert by_i[5]["equal"]  # gamma_5 = N_7
    for row in rows:
        if not row["boundary"]:
            assert row["equal"]


def test_power_subgroups():
    assert power_subgroup_check(3, 10, 1) is True  # N_1^3 = N_4
    assert power_subgroup_check(3, 10, 3) is True  # N_3^3 = N_9
    assert power_subgroup_check(3, 10, 4) == "inconclusive"
    assert power_subgroup_check(3, 6, 1) is True


def test_exp_gamma2_mod_gamma5():
    # N / gamma_5(N) = N / N_7; its derived-series second term has exponent 3
    grp = TruncGroup(3, 7)
    gammas = gamma_series_trunc(grp)
    assert gammas[1].order == 3**4
    assert exp_of_subgroup(grp, gammas[1]) == 3


def test_excluded_levels():
    assert excluded_levels(3, 3) == [5, 14, 41]
    assert excluded_levels(5, 2) == [7, 32]


def test_series_text_round_trip():
    for coeffs in [(0, 0, 0), (1, 0, 2), (2, 1, 1)]:
        f = TruncSeries(3, 4, coeffs)
        assert series_from_str(series_to_str(f)) == f
    f = TruncSeries(5, 7, (0, 3, 0, 1, 0, 4))
    assert series_from_str(series_to_str(f)) == f


# -- isomorphism search ---------------------------------------------------------


def test_iso_search_self(h_group):
    hom, exhaustive = iso_search(h_group, h_group)
    assert hom is not None and hom.ok
    assert exhaustive


def test_stage4_isomorphic_to_h(h_group):
    stage, _ = p_quotient(FpPresentation.free_product(3), 3, 4)
    hom, _ = iso_search(stage, h_group)
    assert hom is not None
    assert hom.is_surjective()


def test_stage4_isomorphic_to_nottingham_quotient(h_group):
    # the level-6 truncated series group is gamma_4-quotient of the full group
    grp = TruncGroup(3, 6)
    pm = pc_presentation_from_group(grp, grp.gens)
    assert pm.pcp.order == 3**5
    assert pm.pcp.is_consistent()
    stage, _ = p_quotient(FpPresentation.free_product(3), 3, 4)
    hom, _ = iso_search(stage, pm.pcp)
    assert hom is not None
    assert hom.is_surjective()


def test_iso_search_absence_by_exhaustion(h_group):
    # (H/<d>) x C3 has the same order but is not isomorphic to H
    from pcforge.pcgroup import PcPresentation

    other = PcPresentation(
        p=3,
        weights=(1, 1, 2, 3, 3),
        comm={(1, 0): ((2, 1),), (2, 1): ((4, 1),)},
    )
    assert other.is_consistent()
    hom, exhaustive = iso_search(h_group, other)
    assert hom is None and exhaustive


def test_iso_search_order_mismatch(h_group, c3c3):
    hom, exhaustive = iso_search(h_group, c3c3)
    assert hom is None and exhaustive
