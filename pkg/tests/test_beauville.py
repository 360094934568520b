"""Sigma sets, Beauville certificates, the two constructions, and the search."""

import random

import pytest

from pcforge.beauville import (
    BeauvilleCertificate,
    DirectSquare,
    beauville_check,
    canonical_cyclic,
    canonical_line,
    certificate_from_text,
    certificate_to_text,
    element_as_generator_word,
    exhaustive_beauville_search,
    format_generator_word,
    generates_pair,
    lemma34_check,
    nonconjugate_element,
    paper_structure_p3,
    paper_structure_p_ge_5,
    parse_generator_word,
    reverify_certificate_text,
    sigma,
    sigma_disjoint,
    sigma_routes_agree,
    socle_generator,
)
from pcforge.pquotient import FpPresentation, evaluate_word, p_quotient


# -- sigma ----------------------------------------------------------------------


def test_sigma_abelian_three_lines(c5c5):
    u, v = c5c5.gen(0), c5c5.gen(1)
    s = sigma(c5c5, u, v)
    assert len(s.socle_orbit) == 3
    assert canonical_line(c5c5, u, 5) in s.socle_orbit


def test_sigma_degenerate_pair(c5c5):
    u = c5c5.gen(0)
    s = sigma(c5c5, u, u)
    # x, x, x^2 all generate the same line
    assert s.socle_orbit == frozenset([canonical_line(c5c5, u, 5)])


def test_sigma_conjugation_invariance(h_group):
    rng = random.Random(11)
    u, v = h_group.gen(0), h_group.gen(1)
    base = sigma(h_group, u, v)
    for _ in range(10):
        g = tuple(rng.randrange(3) for _ in range(5))
        s = sigma(h_group, h_group.conj(u, g), h_group.conj(v, g))
        assert s.socle_orbit == base.socle_orbit


def test_sigma_disjoint_c5c5(c5c5):
    u, v = c5c5.gen(0), c5c5.gen(1)
    pair1, pair2 = paper_structure_p_ge_5(c5c5, u, v)
    s1 = sigma(c5c5, *pair1)
    s2 = sigma(c5c5, *pair2)
    assert sigma_disjoint(s1, s2)
    assert not sigma_disjoint(s1, s1)


def test_sigma_overlap_forced_c3c3(c3c3):
    # only 4 lines exist; two triples must overlap
    u, v = c3c3.gen(0), c3c3.gen(1)
    s1 = sigma(c3c3, u, v)
    s2 = sigma(c3c3, c3c3.mul(u, v), c3c3.mul(u, c3c3.mul(v, v)))
    assert not sigma_disjoint(s1, s2)


def test_socle_route_matches_elements(h_group, c5c5):
    rng = random.Random(5)
    for group in (c5c5, h_group):
        for _ in range(6):
            pair1 = tuple(
                tuple(rng.randrange(group.p) for _ in range(group.ngens)) for _ in range(2)
            )
            pair2 = tuple(
                tuple(rng.randrange(group.p) for _ in range(group.ngens)) for _ in range(2)
            )
            if group.identity in pair1 + pair2:
                continue
            assert sigma_routes_agree(group, pair1, pair2)


# -- beauville_check --------------------------------------------------------------


def test_beauville_c5c5(c5c5):
    u, v = c5c5.gen(0), c5c5.gen(1)
    pair1, pair2 = paper_structure_p_ge_5(c5c5, u, v)
    cert = beauville_check(c5c5, pair1, pair2)
    assert cert.verdict
    assert cert.verify()


def test_beauville_c3c3_absent(c3c3):
    outcome = exhaustive_beauville_search(c3c3)
    assert outcome.exhaustive and not outcome.found


def test_free_p5_stage3_paper_pairs():
    pcp, (u, v) = p_quotient(FpPresentation.free_group(), 5, 3)
    pair1, pair2 = paper_structure_p_ge_5(pcp, u, v)
    cert = beauville_check(pcp, pair1, pair2)
    assert cert.verdict
    assert cert.generates1 and cert.generates2


def test_catanese_baseline():
    verdicts = {}
    for n in (2, 3, 4, 5, 6, 7):
        outcome = exhaustive_beauville_search(DirectSquare(n))
        assert outcome.exhaustive
        verdicts[n] = outcome.found
    assert verdicts == {2: False, 3: False, 4: False, 5: True, 6: False, 7: True}


def test_catanese_positive_certificates_verify():
    for n in (5, 7):
        outcome = exhaustive_beauville_search(DirectSquare(n))
        assert outcome.certificate.verify()


# -- negative searches on the towers ------------------------------------------------


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_free_small_p_absence(p, n):
    pcp, _ = p_quotient(FpPresentation.free_group(), p, n)
    outcome = exhaustive_beauville_search(pcp)
    assert outcome.exhaustive and not outcome.found
    assert any("socle" in w for w in outcome.witnesses)


@pytest.mark.parametrize("n", [2, 3])
def test_freeprod_p3_small_absence(n):
    pcp, _ = p_quotient(FpPresentation.free_product(3), 3, n)
    outcome = exhaustive_beauville_search(pcp, cross_validate=True)
    assert outcome.exhaustive and not outcome.found


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_freeprod_p2_absence(n):
    # dihedral tower: no finite quotient is Beauville
    pcp, _ = p_quotient(FpPresentation.free_product(2), 2, n)
    outcome = exhaustive_beauville_search(pcp)
    assert outcome.exhaustive and not outcome.found


def test_h_search_finds_structure(h_group):
    outcome = exhaustive_beauville_search(h_group)
    assert outcome.found
    assert outcome.certificate.verdict
    assert outcome.certificate.verify()


# -- the p = 3 construction ----------------------------------------------------------


def test_nonconjugate_element_h(h_group):
    a = h_group.gen(0)
    t = nonconjugate_element(h_group, a)
    # oracle: exhaust all commutator values [a, g]
    values = {
        h_group.mul(h_group.inv(a), h_group.conj(a, g)) for g in h_group.elements()
    }
    assert t not in values
    assert not any(h_group.frattini_image(t))
    assert any(t)
    # the centralizer bound keeps the class small: |Cl(a)| <= 9
    assert len(values) <= 9


def test_nonconjugate_element_abelian(c5c5):
    # commutator values are trivial; the first nontrivial Frattini element...
    # C5 x C5 has trivial Frattini subgroup, so only the identity is excluded
    with pytest.raises(ValueError):
        nonconjugate_element(c5c5, c5c5.gen(0))


def test_nonconjugate_element_maximal_class_errors():
    # the class-2 group of order 27 has maximal class: commutator values of a
    # generator cover the whole Frattini subgroup
    pcp, (u, v) = p_quotient(FpPresentation.free_product(3), 3, 3)
    with pytest.raises(ValueError):
        nonconjugate_element(pcp, u)


def test_paper_structure_p3_on_h(h_group):
    u, v = h_group.gen(0), h_group.gen(1)
    pair1, pair2 = paper_structure_p3(h_group, u, v)
    cert = beauville_check(h_group, pair1, pair2)
    assert cert.verdict
    assert cert.verify()


def test_lemma34_on_h(h_group):
    a = h_group.gen(0)
    t = nonconjugate_element(h_group, a)
    assert lemma34_check(h_group, a, t)
    # adversarial t: an actual commutator value makes the unions meet
    g = h_group.gen(1)
    bad_t = h_group.mul(h_group.inv(a), h_group.conj(a, g))
    assert any(bad_t)
    assert not lemma34_check(h_group, a, bad_t)


def test_lemma34_abelian(c5c5):
    x = c5c5.gen(0)
    t = c5c5.gen(1)
    assert lemma34_check(c5c5, x, t)


# -- words and certificates -----------------------------------------------------------


def test_parse_generator_word_forms():
    assert parse_generator_word("uv2") == [1, 2, 2]
    assert parse_generator_word("u*v^2") == [1, 2, 2]
    assert parse_generator_word("x*y^-1") == [1, -2]
    assert parse_generator_word("1") == []
    with pytest.raises(ValueError):
        parse_generator_word("w3")


def test_format_word_round_trip():
    for letters in ([1, 2, 2], [1, -2], [2, 2, 2, 1, 1], []):
        assert parse_generator_word(format_generator_word(letters)) == letters


def test_element_word_expansion(h_group):
    rng = random.Random(9)
    images = [h_group.gen(0), h_group.gen(1)]
    for _ in range(20):
        x = tuple(rng.randrange(3) for _ in range(5))
        letters = element_as_generator_word(h_group, x)
        assert evaluate_word(h_group, images, letters) == x


def test_certificate_round_trip(h_group):
    u, v = h_group.gen(0), h_group.gen(1)
    pair1, pair2 = paper_structure_p3(h_group, u, v)
    cert = beauville_check(h_group, pair1, pair2)
    text = certificate_to_text(cert)
    group, p1, p2, claimed = certificate_from_text(text)
    assert p1 == cert.pair1 and p2 == cert.pair2
    assert claimed["verdict"] == cert.verdict
    assert reverify_certificate_text(text)


def test_certificate_tamper_detected(h_group):
    u, v = h_group.gen(0), h_group.gen(1)
    pair1, pair2 = paper_structure_p3(h_group, u, v)
    cert = beauville_check(h_group, pair1, pair2)
    text = certificate_to_text(cert).replace("verdict = beauville", "verdict = not-beauville")
    assert not reverify_certificate_text(text)


def test_certificate_direct_square():
    g = DirectSquare(5)
    cert = beauville_check(g, ((1, 0), (0, 1)), ((1, 2), (1, 4)), elements=True)
    assert cert.verdict
    text = certificate_to_text(cert)
    assert reverify_certificate_text(text)
