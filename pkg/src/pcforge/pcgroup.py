"""Power-commutator presentations of finite p-groups.

A presentation has generators g_1..g_m, every relative order equal to the
prime p, power relations g_i^p = word in higher generators, and commutator
relations [g_j, g_i] = word in generators above g_j.  Every element has a
unique normal form g_1^{e_1} ... g_m^{e_m} with exponents in [0, p), computed
by collection from the left.

Conventions, used everywhere in this package:

    [a, b] = a^-1 b^-1 a b          a^b = b^-1 a b

Each generator carries a weight; weights are nondecreasing with the index,
power words only use generators of strictly larger weight, commutator words
only generators of weight >= the sum.  With those constraints the subgroup
generated by the generators of weight >= n is the n-th term of the
lower exponent-p central series whenever the presentation was produced by the
quotient machinery in `pquotient`.

Raw elements are exponent tuples; `GroupElement` is the value-type wrapper.
`PcPresentation` doubles as the generic "group" object used across the
package (order / identity / mul / inv / elements), so the Beauville and
series machinery can treat PC groups, matrix-free maximal-class groups and
truncated power-series groups uniformly.
"""

from __future__ import annotations

import itertools
import os
from typing import Iterable, Iterator, Sequence

from . import gfp

DEFAULT_COLLECT_BUDGET = 2_000_000
DEFAULT_MAX_ORDER = 10_000_000

Word = tuple[tuple[int, int], ...]


class CollectionBudgetError(RuntimeError):
    """Collection exceeded its work budget; the presentation is malformed."""


class EnumerationBoundError(RuntimeError):
    """An operation refused to enumerate past the configured element bound."""


class MixedPresentationError(ValueError):
    """Two elements living in different presentations were combined."""


def max_order_default() -> int:
    env = os.environ.get("PCFORGE_MAX_ORDER")
    return int(env) if env else DEFAULT_MAX_ORDER


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PcPresentation:
    """Consistent-by-intent weighted power-commutator presentation.

    power: {i: word} for nontrivial g_i^p (missing key means g_i^p = 1).
    comm:  {(j, i): word} for nontrivial [g_j, g_i], j > i.
    definitions: {k: ("pow", i) or ("comm", j, i)} recording which relation
        introduced g_k; populated by the quotient machinery and required for
        homomorphism evaluation by definition transport.
    """

    def __init__(self, p, weights, power=None, comm=None, definitions=None, validate=True):
        self.p = int(p)
        self.weights = tuple(int(w) for w in weights)
        self.power = {int(i): tuple(tuple(x) for x in w) for i, w in (power or {}).items() if w}
        self.comm = {
            (int(j), int(i)): tuple(tuple(x) for x in w)
            for (j, i), w in (comm or {}).items()
            if w
        }
        self.definitions = dict(definitions or {})
        self._memo: dict = {}
        self._gen_inverses: list | None = None
        if validate:
            self._validate()

    # -- structure ---------------------------------------------------------

    @property
    def ngens(self) -> int:
        return len(self.weights)

    @property
    def pclass(self) -> int:
        return max(self.weights, default=0)

    @property
    def order(self) -> int:
        return self.p ** self.ngens

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def num_weight_one(self) -> int:
        return sum(1 for w in self.weights if w == 1)

    def _validate(self):
        if not _is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        m = self.ngens
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive")
        if any(self.weights[i] > self.weights[i + 1] for i in range(m - 1)):
            raise ValueError("weights must be nondecreasing in the generator index")

        def check_word(word, min_index, min_weight, what):
            for g, e in word:
                if not (0 <= g < m):
                    raise ValueError(f"{what}: generator index {g} out of range")
                if not (1 <= e < self.p):
                    raise ValueError(f"{what}: exponent {e} out of range")
                if g <= min_index:
                    raise ValueError(f"{what}: generator g{g + 1} not above g{min_index + 1}")
                if self.weights[g] < min_weight:
                    raise ValueError(f"{what}: weight discipline violated at g{g + 1}")
            gens = [g for g, _ in word]
            if gens != sorted(set(gens)):
                raise ValueError(f"{what}: word is not a normal word")

        for i, word in self.power.items():
            check_word(word, i, self.weights[i] + 1, f"power relation of g{i + 1}")
        for (j, i), word in self.comm.items():
            if not (0 <= i < j < m):
                raise ValueError(f"commutator key ({j}, {i}) invalid")
            check_word(word, j, self.weights[i] + self.weights[j], f"[g{j + 1}, g{i + 1}]")

    # -- collection --------------------------------------------------------

    def _collect(self, base: list[int], pending: list[tuple[int, int]], budget: int | None = None):
        """Multiply the normal form `base` by the word on the `pending` stack.

        pending[-1] is the next syllable.  Mutates base in place.
        """
        p = self.p
        power = self.power
        comm = self.comm
        limit = budget if budget is not None else DEFAULT_COLLECT_BUDGET
        steps = 0
        m = len(base)
        while pending:
            steps += 1
            if steps > limit:
                raise CollectionBudgetError(
                    f"collection exceeded {limit} steps; presentation is likely inconsistent"
                )
            i, k = pending.pop()
            if k == 0:
                continue
            if k >= p:
                word = power.get(i)
                if word:
                    pending.extend(reversed(word))
                pending.append((i, k - p))
                continue
            if k > 1:
                pending.append((i, k - 1))
            # insert a single letter g_i into base
            jmax = m - 1
            while jmax >= 0 and base[jmax] == 0:
                jmax -= 1
            if jmax <= i:
                base[i] += 1
                if base[i] == p:
                    base[i] = 0
                    word = power.get(i)
                    if word:
                        pending.extend(reversed(word))
            else:
                # peel one letter g_jmax and swap: g_jmax g_i = g_i g_jmax [g_jmax, g_i]
                base[jmax] -= 1
                word = comm.get((jmax, i))
                if word:
                    pending.extend(reversed(word))
                pending.append((jmax, 1))
                pending.append((i, 1))

    def _mul_syllable(self, x: tuple[int, ...], i: int, k: int) -> tuple[int, ...]:
        key = (x, i, k)
        memo = self._memo
        got = memo.get(key)
        if got is None:
            base = list(x)
            self._collect(base, [(i, k)])
            got = tuple(base)
            memo[key] = got
        return got

    def mul(self, x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
        for i, e in enumerate(y):
            if e:
                x = self._mul_syllable(x, i, e)
        return x

    def inv(self, x: tuple[int, ...]) -> tuple[int, ...]:
        # right-multiplying by g_i^d never touches coordinates below i, so the
        # inverse can be read off greedily coordinate by coordinate
        p = self.p
        y = self.identity
        cur = x
        for i in range(self.ngens):
            d = (-cur[i]) % p
            if d:
                cur = self._mul_syllable(cur, i, d)
                y = self._mul_syllable(y, i, d)
        return y

    def pow(self, x: tuple[int, ...], k: int) -> tuple[int, ...]:
        if k < 0:
            x = self.inv(x)
            k = -k
        result = self.identity
        while k:
            if k & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            k >>= 1
        return result

    def element_order(self, x: tuple[int, ...]) -> int:
        o = 1
        while any(x):
            x = self.pow(x, self.p)
            o *= self.p
            if o > self.order:
                raise RuntimeError("order computation diverged; inconsistent presentation?")
        return o

    def conj(self, x: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
        return self.mul(self.mul(self.inv(g), x), g)

    def commutator(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return self.mul(self.mul(self.mul(self.inv(a), self.inv(b)), a), b)

    def gen(self, i: int) -> tuple[int, ...]:
        if not (0 <= i < self.ngens):
            raise ValueError(f"generator index {i} out of range")
        return tuple(1 if j == i else 0 for j in range(self.ngens))

    def word_element(self, word: Word) -> tuple[int, ...]:
        """Element for a normal word (ascending generators): no collection needed."""
        e = [0] * self.ngens
        for g, k in word:
            e[g] = k % self.p
        return tuple(e)

    def collect_word(self, letters: Iterable[int], budget: int | None = None) -> tuple[int, ...]:
        """Collect a free word given as signed 1-based generator letters."""
        x = self.identity
        for letter in letters:
            if letter == 0 or abs(letter) > self.ngens:
                raise ValueError(f"letter {letter} references no generator")
            i = abs(letter) - 1
            if letter > 0:
                x = self._mul_syllable(x, i, 1)
            else:
                x = self.mul(x, self.inv(self.gen(i)))
        return x

    def elements(self, max_order: int | None = None) -> Iterator[tuple[int, ...]]:
        bound = max_order if max_order is not None else max_order_default()
        if self.order > bound:
            raise EnumerationBoundError(f"group order {self.order} exceeds bound {bound}")
        return itertools.product(range(self.p), repeat=self.ngens)

    # -- structure queries --------------------------------------------------

    def frattini_image(self, x: tuple[int, ...]) -> tuple[int, ...]:
        return x[: self.num_weight_one()]

    def generates(self, x: tuple[int, ...], y: tuple[int, ...]) -> bool:
        """True iff x, y generate: their images must span the Frattini quotient."""
        d = self.num_weight_one()
        rows = [list(self.frattini_image(x)), list(self.frattini_image(y))]
        return gfp.rank(rows, d, self.p) == d

    def weight_subgroup(self, n: int) -> "SubgroupBasis":
        if n < 1:
            raise ValueError("weight subgroup needs n >= 1")
        basis = [self.gen(i) for i in range(self.ngens) if self.weights[i] >= n]
        return SubgroupBasis(self, basis, presorted=True)

    # -- consistency --------------------------------------------------------

    def consistency_mismatches(self, weight_filter: bool = True) -> Iterator[tuple]:
        """Yield (kind, gens, lhs, rhs) for every failing overlap test word.

        Test words are the standard ones: the two associations of g_k g_j g_i,
        the overlaps of g_j^p and g_i^p with a neighbouring letter, and
        g_i^{p+1} both ways.  The weight filter keeps only words that can
        interact within the p-class; a presentation passing the filtered tests
        is consistent, so the filter never changes the verdict, only the work.
        """
        p, c, m, w = self.p, self.pclass, self.ngens, self.weights
        for i in range(m):
            if weight_filter and w[i] + 2 > c:
                continue
            pi = self.word_element(self.power.get(i, ()))
            lhs = self.mul(pi, self.gen(i))
            rhs = self.mul(self.gen(i), pi)
            if lhs != rhs:
                yield ("power-power", (i,), lhs, rhs)
        for j in range(m):
            for i in range(j):
                if weight_filter and w[j] + w[i] + 1 > c:
                    continue
                gi, gj = self.gen(i), self.gen(j)
                pj = self.word_element(self.power.get(j, ()))
                lhs = self.mul(pj, gi)
                rhs = self.mul(self._mul_syllable(self.identity, j, p - 1), self.mul(gj, gi))
                if lhs != rhs:
                    yield ("power-left", (j, i), lhs, rhs)
                pi = self.word_element(self.power.get(i, ()))
                lhs = self.mul(gj, pi)
                rhs = self.mul(self.mul(gj, gi), self._mul_syllable(self.identity, i, p - 1))
                if lhs != rhs:
                    yield ("power-right", (j, i), lhs, rhs)
        for k in range(m):
            for j in range(k):
                for i in range(j):
                    if weight_filter and w[k] + w[j] + w[i] > c:
                        continue
                    gi, gj, gk = self.gen(i), self.gen(j), self.gen(k)
                    lhs = self.mul(gk, self.mul(gj, gi))
                    rhs = self.mul(self.mul(gk, gj), gi)
                    if lhs != rhs:
                        yield ("assoc", (k, j, i), lhs, rhs)

    def consistency_failure(self, weight_filter: bool = True):
        """First failing test word, or None if the presentation is consistent."""
        return next(self.consistency_mismatches(weight_filter), None)

    def is_consistent(self, weight_filter: bool = True) -> bool:
        return self.consistency_failure(weight_filter) is None

    def __repr__(self):
        return f"PcPresentation(p={self.p}, ngens={self.ngens}, class={self.pclass})"


class GroupElement:
    """Element of a PC group in collected normal form."""

    __slots__ = ("group", "exps")

    def __init__(self, group: PcPresentation, exps: Sequence[int]):
        self.group = group
        self.exps = tuple(e % group.p for e in exps)
        if len(self.exps) != group.ngens:
            raise ValueError("exponent vector has the wrong length")

    def _raw(self, other: "GroupElement") -> tuple[int, ...]:
        if other.group is not self.group:
            raise MixedPresentationError("elements belong to different presentations")
        return other.exps

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.group, self.group.mul(self.exps, self._raw(other)))

    def __invert__(self) -> "GroupElement":
        return GroupElement(self.group, self.group.inv(self.exps))

    def __pow__(self, k: int) -> "GroupElement":
        return GroupElement(self.group, self.group.pow(self.exps, k))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupElement)
            and other.group is self.group
            and other.exps == self.exps
        )

    def __hash__(self):
        return hash((id(self.group), self.exps))

    def is_identity(self) -> bool:
        return not any(self.exps)

    def order(self) -> int:
        return self.group.element_order(self.exps)

    def conjugate(self, g: "GroupElement") -> "GroupElement":
        return GroupElement(self.group, self.group.conj(self.exps, self._raw(g)))

    def commutator(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.group, self.group.commutator(self.exps, self._raw(other)))

    def frattini_image(self) -> tuple[int, ...]:
        return self.group.frattini_image(self.exps)

    def __repr__(self):
        if not any(self.exps):
            return "1"
        parts = []
        for i, e in enumerate(self.exps):
            if e:
                parts.append(f"g{i + 1}" + (f"^{e}" if e != 1 else ""))
        return "*".join(parts)


class SubgroupBasis:
    """Induced (echelonized) generating sequence of a subgroup of a PC group.

    Basis elements have strictly increasing leading generator indices and the
    leading exponent normalized to 1, so membership is a straight sift.
    """

    def __init__(self, group: PcPresentation, basis: Sequence[tuple[int, ...]], presorted=False):
        self.group = group
        if presorted:
            self.basis = list(basis)
        else:
            self.basis = sorted(basis, key=_leading_index)
        self._by_leading = {_leading_index(b): b for b in self.basis}
        if len(self._by_leading) != len(self.basis) or any(not any(b) for b in self.basis):
            raise ValueError("basis is not in echelon form")

    @classmethod
    def closure(
        cls,
        group: PcPresentation,
        gens: Iterable[tuple[int, ...]],
        normal: bool = False,
    ) -> "SubgroupBasis":
        """Subgroup generated by `gens`; with normal=True, the normal closure."""
        p = group.p
        by_leading: dict[int, tuple[int, ...]] = {}

        def sift_add(x) -> bool:
            new = False
            while any(x):
                l = _leading_index(x)
                b = by_leading.get(l)
                if b is None:
                    lead = x[l]
                    if lead != 1:
                        x = group.pow(x, pow(lead, -1, p))
                    by_leading[l] = x
                    new = True
                    break
                x = group.mul(group.pow(b, (-x[l]) % p), x)
            return new

        for g in gens:
            sift_add(g)
        group_gens = [group.gen(i) for i in range(group.ngens)] if normal else []
        changed = True
        while changed:
            changed = False
            basis_now = list(by_leading.values())
            for a in basis_now:
                if sift_add(group.pow(a, p)):
                    changed = True
                for b in basis_now:
                    if a is not b and sift_add(group.commutator(a, b)):
                        changed = True
                for g in group_gens:
                    if sift_add(group.conj(a, g)):
                        changed = True
        basis = [by_leading[l] for l in sorted(by_leading)]
        return cls(group, basis, presorted=True)

    @property
    def order(self) -> int:
        return self.group.p ** len(self.basis)

    def sift(self, x: tuple[int, ...]) -> tuple[int, ...]:
        p = self.group.p
        while any(x):
            b = self._by_leading.get(_leading_index(x))
            if b is None:
                return x
            x = self.group.mul(self.group.pow(b, (-x[_leading_index(x)]) % p), x)
        return x

    def contains(self, x: tuple[int, ...]) -> bool:
        return not any(self.sift(x))

    def elements(self, max_order: int | None = None) -> Iterator[tuple[int, ...]]:
        bound = max_order if max_order is not None else max_order_default()
        if self.order > bound:
            raise EnumerationBoundError(f"subgroup order {self.order} exceeds bound {bound}")
        for exps in itertools.product(range(self.group.p), repeat=len(self.basis)):
            x = self.group.identity
            for b, e in zip(self.basis, exps):
                if e:
                    x = self.group.mul(x, self.group.pow(b, e))
            yield x

    def is_normal(self) -> bool:
        return all(
            self.contains(self.group.conj(b, self.group.gen(i)))
            for b in self.basis
            for i in range(self.group.ngens)
        )

    def is_central_elementary(self) -> bool:
        g = self.group
        for b in self.basis:
            if any(g.pow(b, g.p)):
                return False
            for i in range(g.ngens):
                if any(g.commutator(b, g.gen(i))):
                    return False
        return True

    def __repr__(self):
        return f"SubgroupBasis(order={self.order}, leading={sorted(self._by_leading)})"


def _leading_index(x: Sequence[int]) -> int:
    for i, e in enumerate(x):
        if e:
            return i
    raise ValueError("identity has no leading index")


# -- spec-facing operation wrappers -----------------------------------------


def collect(word: Iterable[int], pcp: PcPresentation) -> GroupElement:
    """Normal form of a free word given as signed 1-based generator letters."""
    return GroupElement(pcp, pcp.collect_word(word))


def multiply(x: GroupElement, y: GroupElement) -> GroupElement:
    return x * y


def inverse(x: GroupElement) -> GroupElement:
    return ~x


def power(x: GroupElement, k: int) -> GroupElement:
    return x**k


def order(x: GroupElement) -> int:
    return x.order()


def conjugate(x: GroupElement, g: GroupElement) -> GroupElement:
    return x.conjugate(g)


def weight_subgroup(pcp: PcPresentation, n: int) -> SubgroupBasis:
    return pcp.weight_subgroup(n)


def frattini_image(x: GroupElement) -> tuple[int, ...]:
    return x.frattini_image()


def generates(x: GroupElement, y: GroupElement) -> bool:
    if x.group is not y.group:
        raise MixedPresentationError("elements belong to different presentations")
    return x.group.generates(x.exps, y.exps)


def is_consistent(pcp: PcPresentation, weight_filter: bool = True) -> bool:
    return pcp.is_consistent(weight_filter)


def enumerate_elements(pcp: PcPresentation, max_order: int | None = None) -> Iterator[GroupElement]:
    for exps in pcp.elements(max_order):
        yield GroupElement(pcp, exps)


# -- text format -------------------------------------------------------------


def word_to_str(word: Word) -> str:
    if not word:
        return "1"
    return "*".join(f"g{g + 1}" + (f"^{e}" if e != 1 else "") for g, e in word)


def word_from_str(s: str) -> Word:
    s = s.strip()
    if s == "1":
        return ()
    out = []
    for factor in s.split("*"):
        factor = factor.strip()
        if not factor.startswith("g"):
            raise ValueError(f"bad factor {factor!r}")
        if "^" in factor:
            gpart, epart = factor[1:].split("^")
            out.append((int(gpart) - 1, int(epart)))
        else:
            out.append((int(factor[1:]) - 1, 1))
    return tuple(out)


def presentation_to_text(pcp: PcPresentation) -> str:
    lines = [f"pcp p={pcp.p} n={pcp.ngens}"]
    for i, w in enumerate(pcp.weights):
        lines.append(f"w {i + 1} {w}")
    for i in sorted(pcp.power):
        lines.append(f"pow {i + 1} = {word_to_str(pcp.power[i])}")
    for j, i in sorted(pcp.comm):
        lines.append(f"comm {j + 1} {i + 1} = {word_to_str(pcp.comm[(j, i)])}")
    return "\n".join(lines) + "\n"


def presentation_from_text(text: str) -> PcPresentation:
    p = ngens = None
    weights: dict[int, int] = {}
    power = {}
    comm = {}
    for raw_line in text.splitlines():
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("pcp"):
            for tok in line.split()[1:]:
                key, val = tok.split("=")
                if key == "p":
                    p = int(val)
                elif key == "n":
                    ngens = int(val)
        elif line.startswith("w "):
            _, i, w = line.split()
            weights[int(i) - 1] = int(w)
        elif line.startswith("pow "):
            head, word = line.split("=", 1)
            i = int(head.split()[1]) - 1
            power[i] = word_from_str(word)
        elif line.startswith("comm "):
            head, word = line.split("=", 1)
            _, j, i = head.split()
            comm[(int(j) - 1, int(i) - 1)] = word_from_str(word)
        else:
            raise ValueError(f"unrecognized line {line!r}")
    if p is None or ngens is None:
        raise ValueError("missing pcp header")
    if sorted(weights) != list(range(ngens)):
        raise ValueError("weight lines must cover g1..gn")
    return PcPresentation(p, [weights[i] for i in range(ngens)], power, comm)


# -- generic group protocol helpers ------------------------------------------
#
# Several parts of the package work with any object exposing
#   .order (int), .identity, .mul(a, b), .inv(a), optionally .elements()
# on hashable elements.  PcPresentation itself satisfies the protocol.


def generic_element_order(group, x) -> int:
    o = 1
    y = x
    while y != group.identity:
        y = group.mul(y, x)
        o += 1
        if o > group.order:
            raise RuntimeError("element order exceeds group order")
    return o


def generated_set(group, gens, bound: int | None = None) -> frozenset:
    """Element set of the subgroup generated by `gens` (BFS closure)."""
    limit = bound if bound is not None else max_order_default()
    gens = [g for g in gens if g != group.identity]
    seen = {group.identity}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = group.mul(x, g)
                if y not in seen:
                    if len(seen) >= limit:
                        raise EnumerationBoundError("closure exceeded the element bound")
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def normal_closure_set(group, gens, conjugating_gens, bound: int | None = None) -> frozenset:
    """Element set of the normal closure of `gens` under the given conjugators."""
    current = set(generated_set(group, gens, bound))
    while True:
        extra = []
        for x in current:
            for g in conjugating_gens:
                y = group.mul(group.mul(group.inv(g), x), g)
                if y not in current:
                    extra.append(y)
        if not extra:
            return frozenset(current)
        current = set(generated_set(group, list(current | set(extra)), bound))


def conjugacy_orbit(group, x, conjugating_gens) -> frozenset:
    """Orbit of x under conjugation by the subgroup the conjugators generate."""
    seen = {x}
    frontier = [x]
    invs = [group.inv(g) for g in conjugating_gens]
    while frontier:
        nxt = []
        for y in frontier:
            for g, gi in zip(conjugating_gens, invs):
                z = group.mul(group.mul(gi, y), g)
                if z not in seen:
                    seen.add(z)
                    nxt.append(z)
        frontier = nxt
    return frozenset(seen)


def generic_commutator(group, a, b):
    return group.mul(group.mul(group.mul(group.inv(a), group.inv(b)), a), b)


def prime_power(n: int) -> tuple[int, int] | None:
    """(p, e) with n = p^e, or None."""
    if n < 2:
        return None
    for p in range(2, n + 1):
        if p * p > n:
            return (n, 1)
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            return (p, e) if n == 1 else None
    return None
