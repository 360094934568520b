"""Truncated groups of normalized power series t + a_2 t^2 + ... under composition.

The level-k quotient keeps coefficients a_2..a_k (series modulo t^{k+1});
composition and reversion are exact polynomial arithmetic over GF(p).  The
congruence filtration N_m = {f : a_2 = ... = a_m = 0} is central by stages
([N_a, N_b] <= N_{a+b}), which makes echelonized subgroup bases by leading
level the right tool: every subgroup computation here is a sift fixpoint,
never a raw element sweep.

iso_search lives here because the series machinery is what gets compared
against the tower stages (after conversion to PC presentations).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .pcgroup import EnumerationBoundError, PcPresentation, max_order_default
from .pquotient import Homomorphism


@dataclass(frozen=True)
class TruncSeries:
    """t + sum a_i t^i truncated at t^(k+1); coeffs = (a_2, ..., a_k)."""

    p: int
    k: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.k - 1:
            raise ValueError("need coefficients a_2..a_k")
        object.__setattr__(self, "coeffs", tuple(c % self.p for c in self.coeffs))

    def group(self) -> "TruncGroup":
        return TruncGroup(self.p, self.k)


def series_to_str(f: TruncSeries) -> str:
    parts = ["t"]
    for i, c in enumerate(f.coeffs, start=2):
        if c == 1:
            parts.append(f"t^{i}")
        elif c:
            parts.append(f"{c}*t^{i}")
    return " + ".join(parts) + f" (mod t^{f.k + 1}, p={f.p})"


def series_from_str(text: str) -> TruncSeries:
    body, tail = text.rsplit("(", 1)
    tail = tail.rstrip(") ")
    mod_part, p_part = tail.split(",")
    k = int(mod_part.strip().removeprefix("mod t^")) - 1
    p = int(p_part.strip().removeprefix("p="))
    coeffs = [0] * (k - 1)
    for term in body.split("+"):
        term = term.strip()
        if not term:
            continue
        if term == "t":
            continue
        if "*" in term:
            c_str, t_str = term.split("*")
            c = int(c_str)
        else:
            c, t_str = 1, term
        i = int(t_str.strip().removeprefix("t^"))
        coeffs[i - 2] = c % p
    return TruncSeries(p, k, tuple(coeffs))


class TruncGroup:
    """All normalized truncated series at level k, under composition."""

    def __init__(self, p: int, k: int):
        if k < 2:
            raise ValueError("need k >= 2 for a nontrivial truncation")
        self.p = p
        self.k = k
        self.order = p ** (k - 1)
        self.identity = (0,) * (k - 1)

    @property
    def gens(self):
        out = [tuple(1 if i == 0 else 0 for i in range(self.k - 1))]
        if self.k >= 3:
            out.append(tuple(1 if i == 1 else 0 for i in range(self.k - 1)))
        return out

    def _poly(self, f):
        # full coefficient list of the series: index = degree, 0..k
        return [0, 1] + list(f)

    def mul(self, f, g):
        """Coefficients of f(g(t)) mod t^(k+1)."""
        p, k = self.p, self.k
        gp = self._poly(g)
        out = list(gp)
        power = gp[:]
        for i in range(2, k + 1):
            # power = g^i mod t^(k+1)
            new = [0] * (k + 1)
            for d1, c1 in enumerate(power):
                if c1:
                    for d2, c2 in enumerate(gp):
                        if c2 and d1 + d2 <= k:
                            new[d1 + d2] = (new[d1 + d2] + c1 * c2) % p
            power = new
            a = f[i - 2]
            if a:
                for d, c in enumerate(power):
                    if c:
                        out[d] = (out[d] + a * c) % p
        return tuple(v % p for v in out[2:])

    def inv(self, f):
        """Series reversion: the two-sided compositional inverse."""
        p, k = self.p, self.k
        h = list(self.identity)
        for d in range(2, k + 1):
            val = self.mul(f, tuple(h))[d - 2]
            h[d - 2] = (h[d - 2] - val) % p
        out = tuple(h)
        if self.mul(f, out) != self.identity:
            raise RuntimeError("reversion failed")
        return out

    def pow(self, f, e: int):
        if e < 0:
            f = self.inv(f)
            e = -e
        out = self.identity
        while e:
            if e & 1:
                out = self.mul(out, f)
            f = self.mul(f, f)
            e >>= 1
        return out

    def element_order(self, f) -> int:
        o = 1
        y = f
        while y != self.identity:
            y = self.pow(y, self.p)
            o *= self.p
            if o > self.order:
                raise RuntimeError("order diverged")
        return o

    def elements(self, max_order=None):
        bound = max_order if max_order is not None else max_order_default()
        if self.order > bound:
            raise EnumerationBoundError(f"group order {self.order} exceeds bound {bound}")
        return itertools.product(range(self.p), repeat=self.k - 1)

    def level(self, f) -> int:
        """f in N_level minus N_(level+1); identity maps to k."""
        for i, c in enumerate(f):
            if c:
                return i + 1
        return self.k

    def truncate(self, f, m: int) -> tuple:
        """Image in the level-m quotient (m <= k)."""
        return tuple(f[: m - 1])

    def __repr__(self):
        return f"TruncGroup(p={self.p}, k={self.k}, order={self.p}^{self.k - 1})"


def compose(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    if (f.p, f.k) != (g.p, g.k):
        raise ValueError("series live at different truncation levels")
    grp = f.group()
    return TruncSeries(f.p, f.k, grp.mul(f.coeffs, g.coeffs))


def invert(f: TruncSeries) -> TruncSeries:
    return TruncSeries(f.p, f.k, f.group().inv(f.coeffs))


class SeriesBasis:
    """Echelonized generating sequence of a subgroup, by leading level."""

    def __init__(self, group: TruncGroup, by_level: dict):
        self.group = group
        self.by_level = dict(sorted(by_level.items()))

    @classmethod
    def closure(cls, group: TruncGroup, gens: Iterable[tuple], normal: bool = False):
        p = group.p
        by_level: dict = {}

        def sift_add(f) -> bool:
            new = False
            while f != group.identity:
                l = group.level(f)
                b = by_level.get(l)
                if b is None:
                    lead = f[l - 1]
                    if lead != 1:
                        f = group.pow(f, pow(lead, -1, p))
                    by_level[l] = f
                    new = True
                    break
                f = group.mul(group.pow(b, (-f[l - 1]) % p), f)
            return new

        for g in gens:
            sift_add(g)
        conjugators = group.gens if normal else []
        changed = True
        while changed:
            changed = False
            basis_now = list(by_level.values())
            for a in basis_now:
                if sift_add(group.pow(a, p)):
                    changed = True
                for b in basis_now:
                    if a != b:
                        comm = group.mul(
                            group.mul(group.mul(group.inv(a), group.inv(b)), a), b
                        )
                        if sift_add(comm):
                            changed = True
                for g in conjugators:
                    conj = group.mul(group.mul(group.inv(g), a), g)
                    if sift_add(conj):
                        changed = True
        return cls(group, by_level)

    @property
    def order(self) -> int:
        return self.group.p ** len(self.by_level)

    def contains(self, f) -> bool:
        group = self.group
        while f != group.identity:
            b = self.by_level.get(group.level(f))
            if b is None:
                return False
            f = group.mul(group.pow(b, (-f[group.level(f) - 1]) % group.p), f)
        return True

    def elements(self):
        levels = sorted(self.by_level)
        for exps in itertools.product(range(self.group.p), repeat=len(levels)):
            x = self.group.identity
            for l, e in zip(levels, exps):
                if e:
                    x = self.group.mul(x, self.group.pow(self.by_level[l], e))
            yield x

    def is_normal(self) -> bool:
        for b in self.by_level.values():
            for g in self.group.gens:
                if not self.contains(self.group.mul(self.group.mul(self.group.inv(g), b), g)):
                    return False
        return True

    def __repr__(self):
        return f"SeriesBasis(levels={sorted(self.by_level)}, order={self.order})"


def whole_group_basis(group: TruncGroup) -> SeriesBasis:
    basis = SeriesBasis.closure(group, group.gens)
    if basis.order != group.order:
        raise RuntimeError(
            f"the two standard generators span order {basis.order}, expected {group.order}"
        )
    return basis


def subgroup_Nk(group: TruncGroup, m: int) -> SeriesBasis:
    """The congruence subgroup N_m inside the level-k quotient."""
    if not (1 <= m <= group.k):
        raise ValueError(f"level {m} out of range 1..{group.k}")
    gens = []
    for i in range(m + 1, group.k + 1):
        gens.append(tuple(1 if j == i - 2 else 0 for j in range(group.k - 1)))
    basis = SeriesBasis.closure(group, gens)
    if basis.order != group.p ** (group.k - m):
        raise RuntimeError("congruence subgroup has unexpected order")
    return basis


def gamma_series_trunc(group: TruncGroup) -> list[SeriesBasis]:
    gens = group.gens
    series = [whole_group_basis(group)]
    while series[-1].by_level:
        prev = series[-1]
        comms = []
        for b in prev.by_level.values():
            for g in gens:
                comms.append(
                    group.mul(group.mul(group.mul(group.inv(b), group.inv(g)), b), g)
                )
        nxt = SeriesBasis.closure(group, comms, normal=True)
        if nxt.order == prev.order:
            raise RuntimeError("series stalled")
        series.append(nxt)
    return series


def lcs_level(i: int, p: int) -> int:
    """The congruence level r(i) of the i-th lower central term."""
    return i + 1 + (i - 2) // (p - 1)


def lcs_check(p: int, k: int) -> list[dict]:
    """Compare each gamma_i with N_(r(i)) inside the level-k quotient."""
    group = TruncGroup(p, k)
    gammas = gamma_series_trunc(group)
    rows = []
    for i in range(2, len(gammas) + 2):
        r = lcs_level(i, p)
        expected = subgroup_Nk(group, min(r, k))
        got = gammas[i - 1] if i - 1 < len(gammas) else SeriesBasis(group, {})
        expected_order = group.p ** max(group.k - r, 0)
        rows.append(
            {
                "i": i,
                "r": r,
                "gamma_order": got.order,
                "congruence_order": expected_order,
                "equal": got.order == expected_order
                and all(expected.contains(b) for b in got.by_level.values()),
                "boundary": r >= k,
            }
        )
        if got.order == 1:
            break
    return rows


def power_subgroup_check(p: int, k: int, m: int):
    """Does the subgroup of p-th powers of N_m equal N_(mp+r), r = m mod p?

    Returns True/False, or the string "inconclusive" when the truncation
    level leaves no room to observe the target level.
    """
    group = TruncGroup(p, k)
    target_level = m * p + (m % p)
    if target_level + 1 > k:
        return "inconclusive"
    nm = subgroup_Nk(group, m)
    powers = set()
    count = 0
    for f in nm.elements():
        count += 1
        powers.add(group.pow(f, p))
    gen_basis = SeriesBasis.closure(group, sorted(powers))
    target = subgroup_Nk(group, target_level)
    if gen_basis.order != target.order:
        return False
    return all(target.contains(b) for b in gen_basis.by_level.values())


def exp_of_subgroup(group: TruncGroup, basis: SeriesBasis) -> int:
    return max((group.element_order(f) for f in basis.elements()), default=1)


def excluded_levels(p: int, max_m: int) -> list[int]:
    """z_m = p^m + p^(m-1) + ... + p + 2 for m = 1..max_m."""
    out = []
    z = 2
    power = 1
    for _ in range(max_m):
        power *= p
        z += power
        out.append(z)
    return out


# -- isomorphism search -------------------------------------------------------------


def iso_search(pcp1: PcPresentation, pcp2: PcPresentation, max_order: int | None = None):
    """Search for an isomorphism by generator images.

    Candidates for the images of the defining generators of pcp1 are the
    elements of pcp2 of matching order outside the Frattini subgroup; a pair
    is accepted when the definition transport verifies every relation and the
    images generate.  The Frattini subgroup of the target is computed by
    closure (commutators and p-th powers of the generators), not read off the
    declared weights, so hand-written presentations are handled honestly.
    Returns (Homomorphism or None, exhaustive flag).
    """
    from .pcgroup import SubgroupBasis

    bound = max_order if max_order is not None else max_order_default()
    if pcp1.order != pcp2.order:
        return None, True
    if pcp2.order > bound:
        return None, False
    defining = [i for i in range(pcp1.ngens) if i not in pcp1.definitions]
    if len(defining) != 2:
        raise ValueError("iso_search needs a 2-generator source with definitions")

    g2_gens = [pcp2.gen(i) for i in range(pcp2.ngens)]
    frattini_gens = [pcp2.pow(g, pcp2.p) for g in g2_gens]
    frattini_gens += [pcp2.commutator(a, b) for a in g2_gens for b in g2_gens]
    phi = SubgroupBasis.closure(pcp2, frattini_gens, normal=True)
    if phi.order * pcp2.p ** 2 != pcp2.order:
        return None, True  # the target is not 2-generated

    orders = [pcp1.element_order(pcp1.gen(i)) for i in defining]
    candidates: list[list] = [[], []]
    for el in pcp2.elements():
        if phi.contains(el):
            continue
        o = pcp2.element_order(el)
        for t in range(2):
            if o == orders[t]:
                candidates[t].append(el)
    for h1 in candidates[0]:
        span1 = SubgroupBasis.closure(pcp2, phi.basis + [h1])
        for h2 in candidates[1]:
            if span1.contains(h2):
                continue  # h1, h2 do not generate modulo the Frattini subgroup
            hom = Homomorphism(pcp1, pcp2, [h1, h2], transport=True)
            if hom.ok:
                return hom, True
    return None, True
