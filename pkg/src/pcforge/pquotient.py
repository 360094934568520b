"""Lower exponent-p central quotients of 2-generator presentations.

The engine is the classical inductive step: given a consistent weighted
presentation of the class-(n-1) quotient, build the covering presentation by
attaching a central "tail" generator to every non-defining relation, force
consistency (each failing overlap test word yields a linear relation among
tails over GF(p)), evaluate the relators (their values land in the tail
layer), and eliminate.  Surviving tails become the next weight layer and
remember the relation that defined them, which is what lets homomorphisms be
evaluated by definition transport later.

Everything here is deterministic: tails are ordered power-relations-first,
echelonization pivots on the lowest column, and elements are plain exponent
tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import gfp
from .pcgroup import (
    EnumerationBoundError,
    PcPresentation,
    SubgroupBasis,
    Word,
    generated_set,
    generic_element_order,
    max_order_default,
    normal_closure_set,
    prime_power,
)

DEFAULT_GENERATOR_CAP = 64


class QuotientBudgetError(RuntimeError):
    """The covering presentation outgrew the generator cap."""


# -- finitely presented input -------------------------------------------------


@dataclass(frozen=True)
class FpPresentation:
    """Two-generator presentation: generators x, y and relator words.

    Relators are tuples of nonzero signed letters, +1/-1 for x, +2/-2 for y.
    """

    relators: tuple[tuple[int, ...], ...] = ()
    ngens: int = 2

    def __post_init__(self):
        for rel in self.relators:
            for letter in rel:
                if letter == 0 or abs(letter) > self.ngens:
                    raise ValueError(f"relator letter {letter} out of range")

    @classmethod
    def free_group(cls) -> "FpPresentation":
        return cls(())

    @classmethod
    def free_product(cls, p: int) -> "FpPresentation":
        """Free product of two cyclic groups of order p: <x, y | x^p, y^p>."""
        return cls(((1,) * p, (2,) * p))


def evaluate_word(group, images: Sequence, letters: Iterable[int]):
    """Evaluate a signed-letter word at the given generator images."""
    x = group.identity
    inverses = {}
    for letter in letters:
        img = images[abs(letter) - 1]
        if letter < 0:
            if letter not in inverses:
                inverses[letter] = group.inv(img)
            img = inverses[letter]
        x = group.mul(x, img)
    return x


# -- covering presentation ------------------------------------------------------


@dataclass
class Cover:
    """A stage presentation with tails attached to its non-defining relations."""

    pcp: PcPresentation
    base_ngens: int
    tails: dict[int, tuple]  # tail generator index -> relation tag


def p_cover(pcp: PcPresentation) -> Cover:
    """Attach a new central order-p tail to every non-defining relation.

    Commutator relations whose weight sum already exceeds class+1 are forced
    trivial in the cover and get no tail.  All tails live in weight class+1.
    """
    m, c, w = pcp.ngens, pcp.pclass, pcp.weights
    defined = set(pcp.definitions.values())
    tags = []
    for i in range(m):
        if ("pow", i) not in defined:
            tags.append(("pow", i))
    for j in range(m):
        for i in range(j):
            if ("comm", j, i) in defined:
                continue
            if w[i] + w[j] > c + 1:
                continue
            tags.append(("comm", j, i))

    tails = {m + t: tag for t, tag in enumerate(tags)}
    weights = pcp.weights + (c + 1,) * len(tags)
    power = {i: word for i, word in pcp.power.items()}
    comm = {key: word for key, word in pcp.comm.items()}
    definitions = dict(pcp.definitions)
    for tail_gen, tag in tails.items():
        definitions[tail_gen] = tag
        if tag[0] == "pow":
            i = tag[1]
            power[i] = pcp.power.get(i, ()) + ((tail_gen, 1),)
        else:
            _, j, i = tag
            comm[(j, i)] = pcp.comm.get((j, i), ()) + ((tail_gen, 1),)
    cover = PcPresentation(pcp.p, weights, power, comm, definitions)
    return Cover(cover, m, tails)


def _top_layer(pcp: PcPresentation) -> list[int]:
    c = pcp.pclass
    return [i for i in range(pcp.ngens) if pcp.weights[i] == c]


def quotient_by_top_layer_rows(pcp: PcPresentation, rows: Iterable[Sequence[int]]):
    """Quotient by the subgroup of the central top layer spanned by `rows`.

    Each row is a GF(p) vector over the top-weight generators.  Returns
    (new presentation, rewrite) where rewrite maps old exponent tuples to new
    ones.  Pivot generators get substituted by their (negated) row tails.
    """
    p = pcp.p
    layer = _top_layer(pcp)
    nlayer = len(layer)
    layer_pos = {g: t for t, g in enumerate(layer)}
    red, pivots = gfp.rref(rows, nlayer, p)

    # substitution for eliminated layer generators, as vectors over the layer
    subst = {}
    for row, pc in zip(red, pivots):
        subst[layer[pc]] = [(-row[t]) % p for t in range(nlayer)]
        subst[layer[pc]][pc] = 0

    keep = [g for g in range(pcp.ngens) if g not in subst]
    renum = {g: t for t, g in enumerate(keep)}

    def rewrite_layer_vec(vec):
        out = list(vec)
        for row, pc in zip(red, pivots):
            c = out[pc]
            if c:
                out[pc] = 0
                for t in range(nlayer):
                    out[t] = (out[t] + c * subst[layer[pc]][t]) % p
        return out

    def rewrite_word(word: Word) -> Word:
        head = []
        layer_vec = [0] * nlayer
        for g, e in word:
            if g in layer_pos:
                layer_vec[layer_pos[g]] = (layer_vec[layer_pos[g]] + e) % p
            else:
                head.append((renum[g], e))
        layer_vec = rewrite_layer_vec(layer_vec)
        tail = [
            (renum[layer[t]], layer_vec[t])
            for t in range(nlayer)
            if layer_vec[t] and layer[t] in renum
        ]
        return tuple(head + tail)

    def rewrite(x: tuple) -> tuple:
        layer_vec = rewrite_layer_vec([x[g] for g in layer])
        out = []
        for g in keep:
            out.append(layer_vec[layer_pos[g]] if g in layer_pos else x[g])
        return tuple(out)

    power = {}
    for i, word in pcp.power.items():
        if i in renum:
            new_word = rewrite_word(word)
            if new_word:
                power[renum[i]] = new_word
    comm = {}
    for (j, i), word in pcp.comm.items():
        if j in renum and i in renum:
            new_word = rewrite_word(word)
            if new_word:
                comm[(renum[j], renum[i])] = new_word
    definitions = {renum[k]: tag for k, tag in pcp.definitions.items() if k in renum}
    # definition tags reference generator indices; renumber those too
    fixed_defs = {}
    for k, tag in definitions.items():
        if tag[0] == "pow":
            fixed_defs[k] = ("pow", renum[tag[1]])
        else:
            fixed_defs[k] = ("comm", renum[tag[1]], renum[tag[2]])
    weights = tuple(pcp.weights[g] for g in keep)
    out = PcPresentation(pcp.p, weights, power, comm, fixed_defs)
    return out, rewrite


def enforce_consistency(cover: Cover):
    """Collect all overlap test mismatches of the cover into GF(p) rows on the
    tail layer, then eliminate.  Returns (rows, reduced Cover)."""
    pcp = cover.pcp
    base = cover.base_ngens
    rows = []
    for kind, gens, lhs, rhs in pcp.consistency_mismatches():
        if lhs[:base] != rhs[:base]:
            raise RuntimeError(
                f"test word {kind}{gens} deviates outside the tail layer; "
                "the input stage presentation is inconsistent"
            )
        rows.append([(lhs[g] - rhs[g]) % pcp.p for g in range(base, pcp.ngens)])
    reduced, rewrite = quotient_by_top_layer_rows(pcp, rows)
    # surviving tails keep their index order after the base generators; their
    # tags ride along in the definitions map
    tails = {k: tag for k, tag in reduced.definitions.items() if k >= base}
    return rows, Cover(reduced, base, tails)


def impose_relations(cover: Cover, images: Sequence[tuple], relators) -> tuple:
    """Evaluate each relator at the lifted images and quotient the tail layer.

    Returns (presentation, rewrite).  Relator values must lie in the tail
    layer; anything else means the staging is wrong and raises.
    """
    pcp = cover.pcp
    base = cover.base_ngens
    rows = []
    for rel in relators:
        z = evaluate_word(pcp, images, rel)
        if any(z[:base]):
            raise RuntimeError(f"relator {rel} is not central in the cover: {z}")
        rows.append(list(z[base:]))
    return quotient_by_top_layer_rows(pcp, rows)


# -- the tower ------------------------------------------------------------------


@dataclass
class Stage:
    n: int
    pcp: PcPresentation
    img_x: tuple
    img_y: tuple

    @property
    def images(self):
        return (self.img_x, self.img_y)


@dataclass
class QuotientTower:
    prime: int
    fp: FpPresentation
    stages: list[Stage] = field(default_factory=list)
    terminated: bool = False

    def stage(self, n: int) -> Stage:
        for s in self.stages:
            if s.n == n:
                return s
        raise KeyError(f"tower has no stage {n}")

    @property
    def top(self) -> Stage:
        return self.stages[-1]


def _abelianized_stage(fp: FpPresentation, p: int) -> Stage:
    """Stage n=2: the elementary abelianization, with relator rows imposed."""
    rows = []
    for rel in fp.relators:
        row = [0] * fp.ngens
        for letter in rel:
            row[abs(letter) - 1] += 1 if letter > 0 else -1
        rows.append([x % p for x in row])
    red, pivots = gfp.rref(rows, fp.ngens, p)
    free_cols = [c for c in range(fp.ngens) if c not in pivots]
    m = len(free_cols)
    pcp = PcPresentation(p, (1,) * m)
    col_of = {c: t for t, c in enumerate(free_cols)}
    images = []
    for g in range(fp.ngens):
        vec = [0] * m
        if g in col_of:
            vec[col_of[g]] = 1
        else:
            row = red[pivots.index(g)]
            for c in free_cols:
                vec[col_of[c]] = (-row[c]) % p
        images.append(tuple(vec))
    return Stage(2, pcp, images[0], images[1])


def quotient_tower(
    fp: FpPresentation,
    p: int,
    n: int,
    max_gens: int = DEFAULT_GENERATOR_CAP,
) -> QuotientTower:
    """Quotients by the lower exponent-p central series, stages 2..n."""
    if n < 2:
        raise ValueError("towers start at n = 2")
    tower = QuotientTower(p, fp)
    stage = _abelianized_stage(fp, p)
    tower.stages.append(stage)
    for nn in range(3, n + 1):
        cover = p_cover(stage.pcp)
        if cover.pcp.ngens > max_gens:
            raise QuotientBudgetError(
                f"cover at stage {nn} needs {cover.pcp.ngens} generators (cap {max_gens})"
            )
        _, cover = enforce_consistency(cover)
        pad = cover.pcp.ngens - len(stage.img_x)
        img_x = stage.img_x + (0,) * pad
        img_y = stage.img_y + (0,) * pad
        pcp, rewrite = impose_relations(cover, [img_x, img_y], fp.relators)
        if pcp.ngens == stage.pcp.ngens:
            tower.terminated = True
            break
        stage = Stage(nn, pcp, rewrite(img_x), rewrite(img_y))
        tower.stages.append(stage)
    return tower


def p_quotient(fp: FpPresentation, p: int, n: int, max_gens: int = DEFAULT_GENERATOR_CAP):
    """Presentation of the stage-n quotient plus the images of x and y."""
    tower = quotient_tower(fp, p, n, max_gens)
    top = tower.top
    if top.n != n and not tower.terminated:
        raise RuntimeError("tower construction stopped early without terminating")
    return top.pcp, (top.img_x, top.img_y)


# -- homomorphisms ----------------------------------------------------------------


def _group_pow(group, x, k: int):
    if hasattr(group, "pow"):
        return group.pow(x, k)
    if k < 0:
        x = group.inv(x)
        k = -k
    out = group.identity
    while k:
        if k & 1:
            out = group.mul(out, x)
        x = group.mul(x, x)
        k >>= 1
    return out


def _group_comm(group, a, b):
    return group.mul(group.mul(group.mul(group.inv(a), group.inv(b)), a), b)


class Homomorphism:
    """Verified homomorphism from a PC group into any group object.

    Accepts either images for every generator, or images for the defining
    (definition-free) generators only, in which case the rest are transported
    along their definitions.  Construction checks every power and commutator
    relation of the source, including the implicitly trivial ones.
    """

    def __init__(self, src: PcPresentation, dst, images: Sequence, *, transport: bool = False):
        self.src = src
        self.dst = dst
        if transport:
            images = self._transport(list(images))
        if len(images) != src.ngens:
            raise ValueError("need one image per source generator")
        self.images = list(images)
        self.failing_relation = self._verify()

    def _transport(self, defining_images: list) -> list:
        src = self.src
        defining = [i for i in range(src.ngens) if i not in src.definitions]
        if len(defining) != len(defining_images):
            raise ValueError(
                f"{len(defining)} defining generators but {len(defining_images)} images"
            )
        images: list = [None] * src.ngens
        for i, img in zip(defining, defining_images):
            images[i] = img
        for k in sorted(src.definitions):
            tag = src.definitions[k]
            refs = [tag[1]] if tag[0] == "pow" else [tag[1], tag[2]]
            if any(images[r] is None for r in refs):
                raise ValueError(f"definition of g{k + 1} references an unresolved generator")
            if tag[0] == "pow":
                images[k] = _group_pow(self.dst, images[tag[1]], src.p)
            else:
                _, j, i = tag
                images[k] = _group_comm(self.dst, images[j], images[i])
        if any(img is None for img in images):
            raise ValueError("definition transport left generators without images")
        return images

    def _verify(self):
        src, dst = self.src, self.dst
        for i in range(src.ngens):
            lhs = _group_pow(dst, self.images[i], src.p)
            rhs = self._eval_word(src.power.get(i, ()))
            if lhs != rhs:
                return ("pow", i)
        for j in range(src.ngens):
            for i in range(j):
                lhs = _group_comm(dst, self.images[j], self.images[i])
                rhs = self._eval_word(src.comm.get((j, i), ()))
                if lhs != rhs:
                    return ("comm", j, i)
        return None

    def _eval_word(self, word: Word):
        x = self.dst.identity
        for g, e in word:
            x = self.dst.mul(x, _group_pow(self.dst, self.images[g], e))
        return x

    @property
    def ok(self) -> bool:
        return self.failing_relation is None

    def __call__(self, x: tuple):
        out = self.dst.identity
        for i, e in enumerate(x):
            if e:
                out = self.dst.mul(out, _group_pow(self.dst, self.images[i], e))
        return out

    def image_order(self, bound: int | None = None) -> int:
        if isinstance(self.dst, PcPresentation):
            return SubgroupBasis.closure(self.dst, self.images).order
        return len(generated_set(self.dst, self.images, bound))

    def is_surjective(self, bound: int | None = None) -> bool:
        return self.image_order(bound) == self.dst.order


def homomorphism(src: PcPresentation, dst, defining_images: Sequence) -> Homomorphism:
    """Transport defining-generator images along definitions and verify.

    Raises ValueError with the failing relation if the map is not a
    homomorphism.
    """
    h = Homomorphism(src, dst, defining_images, transport=True)
    if not h.ok:
        raise ValueError(f"relation violated by the generator images: {h.failing_relation}")
    return h


def kernel_meet_layer(h: Homomorphism, n: int) -> SubgroupBasis:
    """Basis of Ker(h) meet the weight-(n-1) layer of the source.

    The layer must be central elementary abelian (true for the top layer of
    every stage); the restriction of h to it is then GF(p)-linear and the
    kernel is found by exhausting coefficient vectors.
    """
    src = h.src
    layer = src.weight_subgroup(n - 1)
    if not layer.is_central_elementary():
        raise ValueError(f"weight-{n - 1} layer is not central elementary abelian")
    basis = layer.basis
    p = src.p
    if p ** len(basis) > max_order_default():
        raise EnumerationBoundError("layer too large to exhaust")
    dst_images = [h(b) for b in basis]
    kernel_rows = []
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        acc = h.dst.identity
        for img, c in zip(dst_images, coeffs):
            if c:
                acc = h.dst.mul(acc, _group_pow(h.dst, img, c))
        if acc == h.dst.identity and any(coeffs):
            kernel_rows.append(list(coeffs))
    red, _ = gfp.rref(kernel_rows, len(basis), p)
    elements = []
    for row in red:
        x = src.identity
        for b, c in zip(basis, row):
            if c:
                x = src.mul(x, src.pow(b, c))
        elements.append(x)
    return SubgroupBasis(src, elements)


# -- series and friends -------------------------------------------------------------


def gamma_series(pcp: PcPresentation) -> list[SubgroupBasis]:
    """Lower central series computed by iterated commutator closure.

    Returned list is [gamma_1, gamma_2, ..., trivial]; gamma_1 is the whole
    group.  Purely commutator-defined, so it can differ from the weight
    filtration on free-group stages.
    """
    gens = [pcp.gen(i) for i in range(pcp.ngens)]
    series = [SubgroupBasis(pcp, gens, presorted=True)]
    while series[-1].basis:
        prev = series[-1]
        comms = [pcp.commutator(b, g) for b in prev.basis for g in gens]
        nxt = SubgroupBasis.closure(pcp, comms, normal=True)
        if nxt.order == prev.order:
            raise RuntimeError("lower central series stalled; not nilpotent?")
        series.append(nxt)
    return series


def nilpotency_class(pcp: PcPresentation) -> int:
    return len(gamma_series(pcp)) - 1


def omega_subgroup(pcp: PcPresentation, i: int, max_order: int | None = None) -> SubgroupBasis:
    """Subgroup generated by all elements of order dividing p^i (brute force)."""
    cutoff = pcp.p**i
    gens = [x for x in pcp.elements(max_order) if pcp.element_order(x) <= cutoff]
    return SubgroupBasis.closure(pcp, gens)


def subgroup_exponent(basis: SubgroupBasis, max_order: int | None = None) -> int:
    group = basis.group
    return max(group.element_order(x) for x in basis.elements(max_order))


# -- black-box presentations ---------------------------------------------------------


@dataclass
class GroupPresentationMap:
    """PC presentation of a concrete group plus the two-way dictionaries."""

    pcp: PcPresentation
    group: object
    gen_reps: list  # concrete element per PC generator
    layers: list  # element sets of the lower exponent-p central series

    def to_pc(self, z) -> tuple:
        """Exponent vector of a concrete element (layer-by-layer division)."""
        p = self.pcp.p
        exps = []
        rem = z
        start = 0
        for level in range(len(self.layers) - 1):
            below = self.layers[level + 1]
            reps = [
                self.gen_reps[k]
                for k in range(self.pcp.ngens)
                if self.pcp.weights[k] == level + 1
            ]
            found = None
            for coeffs in itertools.product(range(p), repeat=len(reps)):
                acc = self.group.identity
                for r, c in zip(reps, coeffs):
                    if c:
                        acc = self.group.mul(acc, _group_pow(self.group, r, c))
                if self.group.mul(self.group.inv(acc), rem) in below:
                    found = coeffs
                    break
            if found is None:
                raise ValueError("element does not decompose; not in the group?")
            exps.extend(found)
            acc = self.group.identity
            for r, c in zip(reps, found):
                if c:
                    acc = self.group.mul(acc, _group_pow(self.group, r, c))
            rem = self.group.mul(self.group.inv(acc), rem)
            start += len(reps)
        if rem != self.group.identity:
            raise ValueError("decomposition left a nontrivial remainder")
        return tuple(exps)

    def from_pc(self, x: tuple):
        out = self.group.identity
        for k, e in enumerate(x):
            if e:
                out = self.group.mul(out, _group_pow(self.group, self.gen_reps[k], e))
        return out


def lambda_series_sets(group, gens, bound: int | None = None) -> list[frozenset]:
    """Element sets of the lower exponent-p central series of a concrete group."""
    p, _ = prime_power(group.order) or (None, None)
    if p is None:
        raise ValueError("group order is not a prime power")
    full = generated_set(group, gens, bound)
    if len(full) != group.order:
        raise ValueError("the given generators do not generate")
    series = [full]
    while len(series[-1]) > 1:
        current = series[-1]
        next_gens = [_group_comm(group, a, g) for a in current for g in gens]
        next_gens += [_group_pow(group, a, p) for a in current]
        series.append(normal_closure_set(group, next_gens, gens, bound))
    return series


def gamma_series_sets(group, gens, bound: int | None = None) -> list[frozenset]:
    """Element sets of the lower central series of a concrete group."""
    full = generated_set(group, gens, bound)
    series = [full]
    while len(series[-1]) > 1:
        current = series[-1]
        next_gens = [_group_comm(group, a, g) for a in current for g in gens]
        nxt = normal_closure_set(group, next_gens, gens, bound)
        if len(nxt) == len(current):
            raise RuntimeError("lower central series stalled; not nilpotent?")
        series.append(nxt)
    return series


def pc_presentation_from_group(group, gens, bound: int | None = None) -> GroupPresentationMap:
    """Consistent weighted PC presentation of a concrete finite p-group.

    Walks the lower exponent-p central series of the group, picks a basis of
    each layer in deterministic (sorted) order, and reads every power and
    commutator relation off the group itself, so the result is consistent by
    construction (and re-checked by the caller's tests, not assumed).
    """
    p, _ = prime_power(group.order) or (None, None)
    if p is None:
        raise ValueError("group order is not a prime power")
    layers = lambda_series_sets(group, gens, bound)
    gen_reps = []
    weights = []
    for level in range(len(layers) - 1):
        upper, lower = layers[level], layers[level + 1]
        current = set(lower)
        for x in sorted(upper):
            if x not in current:
                gen_reps.append(x)
                weights.append(level + 1)
                # subgroups between consecutive layer terms are normal in the
                # upper term, so adjoining x just unions p cosets
                powers = [x]
                for _ in range(p - 2):
                    powers.append(group.mul(powers[-1], x))
                new = set(current)
                for q in powers:
                    new.update(group.mul(c, q) for c in current)
                current = new
        if len(current) != len(upper):
            raise RuntimeError("layer basis extraction failed")

    m = len(gen_reps)
    pm = GroupPresentationMap(
        pcp=PcPresentation(p, tuple(weights)),  # placeholder, replaced below
        group=group,
        gen_reps=gen_reps,
        layers=layers,
    )
    power = {}
    comm = {}
    for k in range(m):
        word_vec = pm.to_pc(_group_pow(group, gen_reps[k], p))
        word = tuple((g, e) for g, e in enumerate(word_vec) if e)
        if any(g <= k for g, _ in word):
            raise RuntimeError("power relation not triangular")
        if word:
            power[k] = word
    for j in range(m):
        for i in range(j):
            word_vec = pm.to_pc(_group_comm(group, gen_reps[j], gen_reps[i]))
            word = tuple((g, e) for g, e in enumerate(word_vec) if e)
            if any(g <= j for g, _ in word):
                raise RuntimeError("commutator relation not triangular")
            if word:
                comm[(j, i)] = word
    pm.pcp = PcPresentation(p, tuple(weights), power, comm)
    return pm
