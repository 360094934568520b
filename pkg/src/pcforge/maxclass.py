"""Finite maximal-class p-groups <s> acting on a cyclotomic lattice quotient.

The group of order p^n (n >= 3) is the semidirect product of C_p with
A = Z^{p-1} / (T - I)^{n-1} Z^{p-1}, where T is the companion matrix of
x^{p-1} + ... + x + 1.  Since T^p = I exactly and T^{p-1} + ... + T + I = 0,
every element outside A has order p, and the lower central series drops by
one power of p per step: the canonical epimorphisms from the free-product
stages land here.

Elements are pairs (sigma, a) with sigma mod p and a a canonical lattice
residue; multiplication is (s1, a1)(s2, a2) = (s1 + s2, a1 T^{s2} + a2).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import intlattice
from .pcgroup import PcPresentation, generated_set, prime_power
from .pquotient import (
    GroupPresentationMap,
    Homomorphism,
    gamma_series_sets,
    homomorphism,
    lambda_series_sets,
    nilpotency_class,
    pc_presentation_from_group,
    quotient_by_top_layer_rows,
    kernel_meet_layer,
)


class MaxClassGroup:
    def __init__(self, p: int, n: int):
        if p < 3 or prime_power(p) != (p, 1):
            raise ValueError("p must be an odd prime")
        if n < 3:
            raise ValueError("the construction needs n >= 3")
        self.p = p
        self.n = n
        d = p - 1
        self.theta = intlattice.companion_matrix([1] * d)
        pi = intlattice.mat_sub(self.theta, intlattice.identity_matrix(d))
        self.lattice = intlattice.LatticeQuotient(intlattice.mat_pow(pi, n - 1))
        self.order = p * self.lattice.order
        if self.order != p**n:
            raise RuntimeError("lattice index mismatch; construction is broken")
        self.identity = (0, (0,) * d)
        self._theta_pows = [intlattice.identity_matrix(d)]
        for _ in range(p - 1):
            self._theta_pows.append(intlattice.mat_mul(self._theta_pows[-1], self.theta))

    @property
    def s(self):
        """The order-p element acting on A."""
        return (1, (0,) * (self.p - 1))

    @property
    def s1(self):
        """First standard basis vector of A, outside the derived subgroup."""
        return (0, self.lattice.reduce((1,) + (0,) * (self.p - 2)))

    @property
    def gens(self):
        return [self.s, self.s1]

    def _act(self, a, k):
        m = self._theta_pows[k % self.p]
        return tuple(sum(a[t] * m[t][j] for t in range(len(a))) for j in range(len(a)))

    def mul(self, x, y):
        s1, a1 = x
        s2, a2 = y
        moved = self._act(a1, s2)
        return ((s1 + s2) % self.p, self.lattice.reduce([u + v for u, v in zip(moved, a2)]))

    def inv(self, x):
        s, a = x
        neg = self._act([-v for v in a], (-s) % self.p)
        return ((-s) % self.p, self.lattice.reduce(neg))

    def pow(self, x, k: int):
        if k < 0:
            x = self.inv(x)
            k = -k
        out = self.identity
        while k:
            if k & 1:
                out = self.mul(out, x)
            x = self.mul(x, x)
            k >>= 1
        return out

    def element_order(self, x) -> int:
        o = 1
        y = x
        while y != self.identity:
            y = self.pow(y, self.p)
            o *= self.p
            if o > self.order:
                raise RuntimeError("order computation diverged")
        return o

    def elements(self):
        for sigma in range(self.p):
            for a in self.lattice.elements():
                yield (sigma, a)

    def abelian_part(self):
        """The maximal abelian subgroup {sigma = 0}."""
        return [(0, a) for a in self.lattice.elements()]

    def __repr__(self):
        return f"MaxClassGroup(p={self.p}, order={self.p}^{self.n})"


def maximal_class_group(p: int, n: int) -> MaxClassGroup:
    return MaxClassGroup(p, n)


def gamma_series_P(P: MaxClassGroup) -> list[frozenset]:
    """Lower central series element sets, by iterated commutator closure."""
    return gamma_series_sets(P, P.gens)


def is_maximal_class_concrete(group, gens) -> bool:
    pp = prime_power(group.order)
    if pp is None:
        return False
    _, e = pp
    return len(gamma_series_sets(group, gens)) - 1 == e - 1 if e >= 2 else e <= 1


def is_maximal_class(pcp: PcPresentation) -> bool:
    """Class n-1 for order p^n; for n <= 2 every group qualifies vacuously."""
    if pcp.ngens <= 2:
        return True
    return nilpotency_class(pcp) == pcp.ngens - 1


def centralizer_order(group, x) -> int:
    return sum(1 for g in group.elements() if group.mul(g, x) == group.mul(x, g))


def has_p2_centralizer_element(group) -> bool:
    """The centralizer characterization of maximal class."""
    p = prime_power(group.order)[0]
    return any(centralizer_order(group, x) == p * p for x in group.elements())


def exponent_profile(P: MaxClassGroup) -> list[tuple[int, int, bool, bool]]:
    """(i, exp P_i, exponent matches p^ceil((n-i)/(p-1)), attained by all of
    P_i minus P_{i+1}) for i = 1..n-1, with P_1 the abelian maximal subgroup."""
    p, n = P.p, P.n
    gammas = gamma_series_P(P)
    subgroups = [frozenset(P.abelian_part())] + gammas[1:]
    out = []
    for i in range(1, n):
        sub = subgroups[i - 1]
        below = subgroups[i] if i < len(subgroups) else frozenset([P.identity])
        expected = p ** (-((n - i) // -(p - 1)))
        orders = {P.element_order(x) for x in sub}
        boundary = {P.element_order(x) for x in sub - below}
        out.append((i, max(orders), max(orders) == expected, boundary == {expected} or not boundary))
    return out


def outside_orders_all_p(P: MaxClassGroup) -> bool:
    """Every element outside the abelian maximal subgroup has order p."""
    return all(
        P.element_order((sigma, a)) == P.p
        for sigma in range(1, P.p)
        for a in P.lattice.elements()
    )


def psi(stage_pcp: PcPresentation, images, P: MaxClassGroup) -> Homomorphism:
    """The epimorphism u -> s^-1, v -> s s1 from a free-product stage onto P.

    Requires the stage and P to sit at the same level: the lower exponent-p
    central series of P must vanish exactly where the stage's does.
    """
    lam = lambda_series_sets(P, P.gens)
    n = stage_pcp.pclass + 1
    if len(lam) - 1 > n - 1:
        raise ValueError(
            f"target has lower exponent-p class {len(lam) - 1}, stage allows {n - 1}"
        )
    del images  # the defining generators are the weight-1 generators
    h = homomorphism(stage_pcp, P, [P.inv(P.s), P.mul(P.s, P.s1)])
    return h


@dataclass
class RefinementTerm:
    subgroup_rows: tuple  # basis of N inside the top weight layer
    quotient: PcPresentation
    images: tuple
    certificate: object


@dataclass
class RefinementSeries:
    n: int
    stage: PcPresentation
    kernel_layer_order: int
    layer_order: int
    terms: list

    @property
    def chain_indices(self):
        return [3] * len(self.terms)


def refinement_series(n: int, p: int = 3) -> RefinementSeries:
    """Normal subgroups between consecutive tower stages with Beauville quotients.

    For the stage G at level n, the subgroup K = Ker(psi) meet the top weight
    layer has index p in that layer; every subgroup of K (enumerated along a
    maximal chain of its echelon basis) is a valid N, and each quotient F/N
    carries the p = 3 construction.
    """
    if p != 3:
        raise ValueError("the refinement route is the p = 3 branch")
    if n < 5:
        raise ValueError("refinements start at n = 5")
    from .beauville import beauville_check, paper_structure_p3
    from .pquotient import FpPresentation, p_quotient

    stage, (u, v) = p_quotient(FpPresentation.free_product(3), 3, n)
    P = maximal_class_group(3, n)
    h = psi(stage, (u, v), P)
    if not h.is_surjective():
        raise RuntimeError("psi is not surjective; wrong stage/target pairing")
    K = kernel_meet_layer(h, n)
    layer = stage.weight_subgroup(n - 1)
    if K.order * 3 != layer.order:
        raise RuntimeError("kernel meet layer does not have index 3")

    top = [i for i in range(stage.ngens) if stage.weights[i] == stage.pclass]
    terms = []
    for take in range(len(K.basis) + 1):
        rows = [[b[g] for g in top] for b in K.basis[:take]]
        quotient, rewrite = quotient_by_top_layer_rows(stage, rows)
        qu, qv = rewrite(u), rewrite(v)
        pair1, pair2 = paper_structure_p3(quotient, qu, qv)
        cert = beauville_check(quotient, pair1, pair2)
        terms.append(
            RefinementTerm(
                subgroup_rows=tuple(tuple(r) for r in rows),
                quotient=quotient,
                images=(qu, qv),
                certificate=cert,
            )
        )
    return RefinementSeries(
        n=n,
        stage=stage,
        kernel_layer_order=K.order,
        layer_order=layer.order,
        terms=terms,
    )


def to_pc_presentation(P: MaxClassGroup) -> GroupPresentationMap:
    """PC presentation of P with a verified two-way generator dictionary."""
    pm = pc_presentation_from_group(P, P.gens)
    h = Homomorphism(pm.pcp, P, pm.gen_reps)
    if not h.ok:
        raise RuntimeError("conversion produced a non-homomorphism")
    if len(generated_set(P, pm.gen_reps)) != P.order:
        raise RuntimeError("conversion images do not generate")
    if pm.pcp.order != P.order:
        raise RuntimeError("conversion changed the order")
    return pm
