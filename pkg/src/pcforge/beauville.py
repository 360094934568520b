"""Beauville structures: sigma sets, disjointness certificates, and search.

For a pair x, y the set sigma(x,y) is the union of all conjugates of <x>,
<y> and <xy>.  Two such unions intersect trivially iff they share no minimal
subgroup, so for p-groups sigma is stored as the orbit of socle lines (the
unique order-p subgroup of each conjugate), canonicalized by taking the
lexicographically least exponent vector among the p-1 nontrivial powers.
The equivalence with the element-level definition is cross-validated on
small groups rather than assumed.

Groups enter either as PcPresentation objects or as any duck-typed group
with hashable elements exposing order/identity/mul/inv/elements/gens (e.g.
the DirectSquare groups used for the abelian baseline).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .pcgroup import (
    EnumerationBoundError,
    GroupElement,
    PcPresentation,
    conjugacy_orbit,
    generated_set,
    generic_element_order,
    max_order_default,
    prime_power,
)


def _raw(x):
    return x.exps if isinstance(x, GroupElement) else x


def _gens(group):
    if hasattr(group, "gens"):
        return list(group.gens)
    return [group.gen(i) for i in range(group.ngens)]


def _order_of(group, x):
    if hasattr(group, "element_order"):
        return group.element_order(x)
    return generic_element_order(group, x)


def _pow(group, x, k):
    if hasattr(group, "pow"):
        return group.pow(x, k)
    out = group.identity
    y = x
    kk = k
    while kk:
        if kk & 1:
            out = group.mul(out, y)
        y = group.mul(y, y)
        kk >>= 1
    return out


def socle_generator(group, x, p):
    """Generator of the unique order-p subgroup of the nontrivial cyclic <x>."""
    o = _order_of(group, x)
    if o == 1 or o % p:
        raise ValueError("socle needs a nontrivial p-element")
    return _pow(group, x, o // p)


def canonical_line(group, z, p):
    """Canonical generator of an order-p subgroup: lex-least nontrivial power."""
    best = z
    cur = z
    for _ in range(p - 2):
        cur = group.mul(cur, z)
        if cur < best:
            best = cur
    return best


def canonical_cyclic(group, x):
    """Canonical generator of <x>: lex-least among the coprime powers."""
    o = _order_of(group, x)
    best = x
    for k in range(2, o):
        if math.gcd(k, o) == 1:
            cand = _pow(group, x, k)
            if cand < best:
                best = cand
    return best


@dataclass
class SigmaSet:
    """Union of all conjugates of <x>, <y>, <xy>, stored by its socle lines
    (p-groups) and/or as the full set of nontrivial elements."""

    group: object
    pair: tuple
    socle_orbit: frozenset | None = None
    element_set: frozenset | None = None


def sigma(group, x, y, elements: bool = False, max_order: int | None = None) -> SigmaSet:
    x, y = _raw(x), _raw(y)
    bound = max_order if max_order is not None else max_order_default()
    if group.order > bound:
        raise EnumerationBoundError(f"group order {group.order} exceeds bound {bound}")
    gens = _gens(group)
    bases = [b for b in (x, y, group.mul(x, y)) if b != group.identity]
    pp = prime_power(group.order)
    socles = None
    if pp:
        p = pp[0]
        socles = set()
        for b in bases:
            s = socle_generator(group, b, p)
            for c in conjugacy_orbit(group, s, gens):
                socles.add(canonical_line(group, c, p))
        socles = frozenset(socles)
    element_set = None
    if elements or pp is None:
        els = set()
        for b in bases:
            o = _order_of(group, b)
            for k in range(1, o):
                power = _pow(group, b, k)
                els.update(conjugacy_orbit(group, power, gens))
        els.discard(group.identity)
        element_set = frozenset(els)
    return SigmaSet(group, (x, y), socles, element_set)


def sigma_disjoint(s1: SigmaSet, s2: SigmaSet) -> bool:
    if s1.group is not s2.group:
        raise ValueError("sigma sets live in different groups")
    if s1.socle_orbit is not None and s2.socle_orbit is not None:
        return s1.socle_orbit.isdisjoint(s2.socle_orbit)
    if s1.element_set is not None and s2.element_set is not None:
        return s1.element_set.isdisjoint(s2.element_set)
    raise ValueError("sigma sets carry no comparable representation")


def generates_pair(group, x, y, max_order: int | None = None) -> bool:
    x, y = _raw(x), _raw(y)
    if hasattr(group, "generates"):
        return group.generates(x, y)
    return len(generated_set(group, [x, y], max_order)) == group.order


def generation_witness(group, x, y) -> str:
    if isinstance(group, PcPresentation) and group.num_weight_one() == 2:
        fx, fy = group.frattini_image(x), group.frattini_image(y)
        det = (fx[0] * fy[1] - fx[1] * fy[0]) % group.p
        return f"det:{det}"
    return "closure"


@dataclass
class BeauvilleCertificate:
    """Re-verifiable record of a Beauville check for two candidate pairs."""

    group: object
    pair1: tuple
    pair2: tuple
    generates1: bool
    generates2: bool
    witness1: str
    witness2: str
    sigma1: SigmaSet
    sigma2: SigmaSet
    disjoint: bool
    verdict: bool

    def verify(self, max_order: int | None = None) -> bool:
        """Recompute everything from the group and the pairs."""
        fresh = beauville_check(
            self.group,
            self.pair1,
            self.pair2,
            elements=self.sigma1.element_set is not None,
            max_order=max_order,
        )
        same_sigma = (
            fresh.sigma1.socle_orbit == self.sigma1.socle_orbit
            and fresh.sigma2.socle_orbit == self.sigma2.socle_orbit
            and fresh.sigma1.element_set == self.sigma1.element_set
            and fresh.sigma2.element_set == self.sigma2.element_set
        )
        return fresh.verdict == self.verdict and same_sigma


def beauville_check(group, pair1, pair2, elements: bool = False, max_order: int | None = None):
    x1, y1 = (_raw(v) for v in pair1)
    x2, y2 = (_raw(v) for v in pair2)
    g1 = generates_pair(group, x1, y1, max_order)
    g2 = generates_pair(group, x2, y2, max_order)
    s1 = sigma(group, x1, y1, elements=elements, max_order=max_order)
    s2 = sigma(group, x2, y2, elements=elements, max_order=max_order)
    disjoint = sigma_disjoint(s1, s2)
    return BeauvilleCertificate(
        group=group,
        pair1=(x1, y1),
        pair2=(x2, y2),
        generates1=g1,
        generates2=g2,
        witness1=generation_witness(group, x1, y1),
        witness2=generation_witness(group, x2, y2),
        sigma1=s1,
        sigma2=s2,
        disjoint=disjoint,
        verdict=g1 and g2 and disjoint,
    )


def sigma_routes_agree(group, pair1, pair2, max_order: int | None = None) -> bool:
    """Cross-validate: socle-orbit disjointness == element-level disjointness."""
    s1 = sigma(group, *pair1, elements=True, max_order=max_order)
    s2 = sigma(group, *pair2, elements=True, max_order=max_order)
    if s1.socle_orbit is None:
        return True
    return s1.socle_orbit.isdisjoint(s2.socle_orbit) == s1.element_set.isdisjoint(
        s2.element_set
    )


# -- the constructions used by the positive results ---------------------------------


def paper_structure_p_ge_5(group, u, v):
    """The pairs {u, v} and {u v^2, u v^4}; requires p >= 5."""
    u, v = _raw(u), _raw(v)
    pp = prime_power(group.order)
    if pp is None or pp[0] < 5:
        raise ValueError("this construction needs p >= 5")
    uv2 = group.mul(u, _pow(group, v, 2))
    uv4 = group.mul(u, _pow(group, v, 4))
    return (u, v), (uv2, uv4)


def nonconjugate_element(group: PcPresentation, x):
    """First Frattini element, in enumeration order, that is not a value [x, g].

    Exists whenever the group is 2-generated and not of maximal class; when
    the commutator values cover the whole Frattini subgroup (maximal class)
    this raises.
    """
    x = _raw(x)
    gens = _gens(group)
    comm_values = {group.mul(group.inv(x), c) for c in conjugacy_orbit(group, x, gens)}
    d = group.num_weight_one()
    for t in group.elements():
        if any(t[:d]):
            continue  # not in the Frattini subgroup
        if t not in comm_values:
            return t
    raise ValueError("every Frattini element is a commutator value of x (maximal class?)")


def paper_structure_p3(group: PcPresentation, u, v):
    """The pairs {u, v} and {(uz)^-1, vt} with z, t avoiding commutator values.

    Requires p = 3 and a group that is not of maximal class.
    """
    u, v = _raw(u), _raw(v)
    if group.p != 3:
        raise ValueError("this construction is the p = 3 route")
    z = nonconjugate_element(group, u)
    t = nonconjugate_element(group, v)
    pair2 = (group.inv(group.mul(u, z)), group.mul(v, t))
    return (u, v), pair2


def lemma34_check(group, x, t, max_order: int | None = None) -> bool:
    """Directly verify that the conjugate unions of <x> and <xt> meet trivially."""
    x, t = _raw(x), _raw(t)
    gens = _gens(group)

    def union_of_conjugates(b):
        out = set()
        o = _order_of(group, b)
        for k in range(1, o):
            out.update(conjugacy_orbit(group, _pow(group, b, k), gens))
        out.discard(group.identity)
        return out

    return union_of_conjugates(x).isdisjoint(union_of_conjugates(group.mul(x, t)))


# -- exhaustive search ------------------------------------------------------------


@dataclass
class SearchOutcome:
    certificate: BeauvilleCertificate | None
    exhaustive: bool
    witnesses: list

    @property
    def found(self) -> bool:
        return self.certificate is not None


def _gf2_lines(p):
    """The p+1 lines of GF(p)^2, each as its lex-least nonzero point."""
    lines = []
    for vec in [(0, 1)] + [(1, b) for b in range(p)]:
        lines.append(vec)
    return lines


def _line_of(vec, p):
    a, b = vec[0] % p, vec[1] % p
    if a == 0 and b == 0:
        return None
    if a == 0:
        return (0, 1)
    inv = pow(a, -1, p)
    return (1, (b * inv) % p)


def exhaustive_beauville_search(
    group, max_order: int | None = None, cross_validate: bool = False
) -> SearchOutcome:
    """Find a Beauville structure or prove none exists.

    Pairs are classed by the triple of cyclic subgroups {<x>, <y>, <xy>},
    which determines sigma.  For two-generated p-groups a coarse tier runs
    first: whenever every element outside the Frattini subgroup within one
    maximal subgroup has the same socle line, any two pairs whose maximal
    subgroup triples share that maximal subgroup are refuted at once.  With
    p <= 3 the p+1 <= 4 maximal subgroups force every two triples to share,
    so the coarse tier alone can prove absence.
    """
    bound = max_order if max_order is not None else max_order_default()
    if group.order > bound:
        return SearchOutcome(None, False, [f"group order {group.order} exceeds bound {bound}"])
    if isinstance(group, PcPresentation) and group.num_weight_one() == 2 and group.ngens >= 2:
        return _search_pc(group, cross_validate)
    return _search_generic(group)


def _search_pc(group: PcPresentation, cross_validate: bool) -> SearchOutcome:
    p = group.p
    witnesses = []

    # coarse tier: common socle line per maximal subgroup
    by_line: dict = {line: [] for line in _gf2_lines(p)}
    all_elements = list(group.elements())
    for el in all_elements:
        line = _line_of(group.frattini_image(el), p)
        if line is not None:
            by_line[line].append(el)
    line_socle = {}
    for line, members in by_line.items():
        socles = {canonical_line(group, socle_generator(group, b, p), p) for b in members}
        line_socle[line] = next(iter(socles)) if len(socles) == 1 else None

    realized_triples = set()
    for a in by_line:
        for b in by_line:
            det = (a[0] * b[1] - a[1] * b[0]) % p
            if det == 0:
                continue
            for i in range(1, p):
                ab = _line_of((a[0] + i * b[0], a[1] + i * b[1]), p)
                realized_triples.add(frozenset((a, b, ab)))
    triples = sorted(realized_triples, key=sorted)
    coarse_refutes_all = True
    for i, t1 in enumerate(triples):
        for t2 in triples[i:]:
            shared = [m for m in t1 & t2 if line_socle[m] is not None]
            if not shared:
                coarse_refutes_all = False
                break
        if not coarse_refutes_all:
            break
    if coarse_refutes_all:
        witnesses.append(
            f"absence: all {len(triples)} maximal-subgroup triples pairwise share a "
            "maximal subgroup whose outside-Frattini elements have a common socle line"
        )
        for line, s in sorted(line_socle.items()):
            witnesses.append(f"power-socle obstruction at line {line}: common socle {s}")
        return SearchOutcome(None, True, witnesses)

    # fine tier: class pairs by their cyclic-subgroup triples
    outside = [el for el in all_elements if any(group.frattini_image(el))]
    canon_cache: dict = {}

    def canon(el):
        got = canon_cache.get(el)
        if got is None:
            got = canonical_cyclic(group, el)
            canon_cache[el] = got
        return got

    classes: dict = {}
    for x in outside:
        lx = _line_of(group.frattini_image(x), p)
        for y in outside:
            if _line_of(group.frattini_image(y), p) == lx:
                continue
            xy = group.mul(x, y)
            sig = frozenset((canon(x), canon(y), canon(xy)))
            if sig not in classes:
                lines = frozenset(
                    (lx, _line_of(group.frattini_image(y), p), _line_of(group.frattini_image(xy), p))
                )
                classes[sig] = ((x, y), lines)
    witnesses.append(f"{len(classes)} pair classes by cyclic-subgroup triple")

    orbit_cache: dict = {}

    def socle_orbit_of(cyc):
        got = orbit_cache.get(cyc)
        if got is None:
            s = socle_generator(group, cyc, p)
            got = frozenset(
                canonical_line(group, c, p) for c in conjugacy_orbit(group, s, _gens(group))
            )
            orbit_cache[cyc] = got
        return got

    ordered = sorted(classes.items(), key=lambda kv: sorted(kv[0]))
    sigmas = []
    for sig, (rep, lines) in ordered:
        orbit = frozenset().union(*(socle_orbit_of(c) for c in sig))
        sigmas.append((sig, rep, lines, orbit))

    small = group.order <= 3**5
    for i, (sig1, rep1, lines1, orb1) in enumerate(sigmas):
        for sig2, rep2, lines2, orb2 in sigmas[i + 1 :]:
            shared = [m for m in lines1 & lines2 if line_socle[m] is not None]
            if shared:
                continue  # refuted by the power-socle obstruction
            disjoint = orb1.isdisjoint(orb2)
            if cross_validate and small:
                if not sigma_routes_agree(group, rep1, rep2):
                    raise RuntimeError("socle-orbit route disagrees with element-level sigma")
            if disjoint:
                cert = beauville_check(group, rep1, rep2)
                if cert.verdict:
                    witnesses.append("structure found by class search")
                    return SearchOutcome(cert, True, witnesses)
    witnesses.append("absence: every class pair refuted (socle obstruction or sigma overlap)")
    return SearchOutcome(None, True, witnesses)


def _search_generic(group) -> SearchOutcome:
    els = sorted(group.elements())
    canon_cache: dict = {}

    def canon(el):
        if el not in canon_cache:
            canon_cache[el] = canonical_cyclic(group, el)
        return canon_cache[el]

    classes: dict = {}
    for x in els:
        if x == group.identity:
            continue
        for y in els:
            if y == group.identity:
                continue
            if not generates_pair(group, x, y):
                continue
            sig = frozenset((canon(x), canon(y), canon(group.mul(x, y))))
            if sig not in classes:
                classes[sig] = (x, y)
    witnesses = [f"{len(classes)} generating pair classes"]
    sig_cache: dict = {}

    def sigma_els(sig, rep):
        if sig not in sig_cache:
            sig_cache[sig] = sigma(group, rep[0], rep[1], elements=True).element_set
        return sig_cache[sig]

    ordered = sorted(classes.items(), key=lambda kv: sorted(kv[0]))
    for i, (sig1, rep1) in enumerate(ordered):
        for sig2, rep2 in ordered[i + 1 :]:
            if sigma_els(sig1, rep1).isdisjoint(sigma_els(sig2, rep2)):
                cert = beauville_check(group, rep1, rep2, elements=True)
                if cert.verdict:
                    witnesses.append("structure found by class search")
                    return SearchOutcome(cert, True, witnesses)
    witnesses.append("absence: every generating class pair has overlapping sigma sets")
    return SearchOutcome(None, True, witnesses)


# -- the abelian baseline -----------------------------------------------------------


class DirectSquare:
    """C_n x C_n with additive tuples; the abelian baseline family."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("need n >= 2")
        self.n = n
        self.order = n * n
        self.identity = (0, 0)
        self.gens = [(1, 0), (0, 1)]

    def mul(self, a, b):
        return ((a[0] + b[0]) % self.n, (a[1] + b[1]) % self.n)

    def inv(self, a):
        return ((-a[0]) % self.n, (-a[1]) % self.n)

    def elements(self):
        import itertools

        return itertools.product(range(self.n), repeat=2)

    def generates(self, x, y) -> bool:
        det = (x[0] * y[1] - x[1] * y[0]) % self.n
        return math.gcd(det, self.n) == 1

    def element_order(self, x) -> int:
        a = self.n // math.gcd(x[0], self.n)
        b = self.n // math.gcd(x[1], self.n)
        return a * b // math.gcd(a, b)

    def __repr__(self):
        return f"DirectSquare(C_{self.n} x C_{self.n})"


# -- words in the original generators ------------------------------------------------


def parse_generator_word(text: str) -> list[int]:
    """Signed letters for a word over the two original generators.

    Accepts both the compact form ("uv2", "uv4") and the explicit form
    ("u*v^2", "x*y^-1"); u/x denote the first generator, v/y the second.
    """
    letters: list[int] = []
    i = 0
    s = text.strip()
    if s == "1" or not s:
        return letters
    while i < len(s):
        ch = s[i]
        if ch in "*() ":
            i += 1
            continue
        if ch in "uxUX":
            base = 1
        elif ch in "vyVY":
            base = 2
        else:
            raise ValueError(f"unexpected character {ch!r} in word {text!r}")
        i += 1
        exp = 1
        if i < len(s) and s[i] == "^":
            i += 1
            j = i
            if j < len(s) and s[j] == "-":
                j += 1
            while j < len(s) and s[j].isdigit():
                j += 1
            exp = int(s[i:j])
            i = j
        elif i < len(s) and s[i].isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            exp = int(s[i:j])
            i = j
        if exp == 0:
            continue
        sign = 1 if exp > 0 else -1
        letters.extend([sign * base] * abs(exp))
    return letters


def format_generator_word(letters: Sequence[int]) -> str:
    if not letters:
        return "1"
    runs: list[list[int]] = []
    for letter in letters:
        if runs and runs[-1][0] == letter:
            runs[-1][1] += 1
        else:
            runs.append([letter, 1])
    parts = []
    for letter, count in runs:
        name = "x" if abs(letter) == 1 else "y"
        exp = count if letter > 0 else -count
        parts.append(name if exp == 1 else f"{name}^{exp}")
    return "*".join(parts)


def element_as_generator_word(pcp: PcPresentation, x) -> list[int]:
    """Expand an element into a word over the defining generators.

    Walks the definitions: a power-defined generator expands to p copies of
    its base, a commutator-defined one to a^-1 b^-1 a b.  Requires every
    non-defining generator to carry a definition.
    """
    x = _raw(x)
    defining = [i for i in range(pcp.ngens) if i not in pcp.definitions]
    pos = {g: t + 1 for t, g in enumerate(defining)}
    cache: dict[int, list[int]] = {}

    def gen_word(i) -> list[int]:
        if i in cache:
            return cache[i]
        if i in pos:
            w = [pos[i]]
        else:
            tag = pcp.definitions[i]
            if tag[0] == "pow":
                w = gen_word(tag[1]) * pcp.p
            else:
                _, j, k = tag
                wj, wk = gen_word(j), gen_word(k)
                w = [-l for l in reversed(wj)] + [-l for l in reversed(wk)] + wj + wk
        cache[i] = w
        return w

    out: list[int] = []
    for i, e in enumerate(x):
        for _ in range(e):
            out.extend(gen_word(i))
    return out


# -- certificate serialization --------------------------------------------------------


def _element_to_str(el) -> str:
    return ".".join(str(v) for v in el)


def _element_from_str(s: str) -> tuple:
    return tuple(int(v) for v in s.split("."))


def certificate_to_text(cert: BeauvilleCertificate) -> str:
    """Self-contained plain-text certificate, designed for independent re-checking."""
    from .pcgroup import presentation_to_text

    lines = ["beauville-certificate v1"]
    group = cert.group
    if isinstance(group, PcPresentation):
        lines.append("group-kind = pc")
        lines.append("group {")
        lines.extend("  " + l for l in presentation_to_text(group).strip().splitlines())
        lines.append("}")
        can_word = all(
            i in group.definitions for i in range(group.ngens) if group.weights[i] > 1
        ) and group.num_weight_one() == 2
        for label, pair in (("pair1", cert.pair1), ("pair2", cert.pair2)):
            for part, el in zip(("x", "y"), pair):
                if can_word:
                    word = format_generator_word(element_as_generator_word(group, el))
                else:
                    word = "@" + _element_to_str(el)
                lines.append(f"{label}.{part} = {word}")
    elif isinstance(group, DirectSquare):
        lines.append("group-kind = direct-square")
        lines.append(f"n = {group.n}")
        for label, pair in (("pair1", cert.pair1), ("pair2", cert.pair2)):
            for part, el in zip(("x", "y"), pair):
                lines.append(f"{label}.{part} = @{_element_to_str(el)}")
    else:
        raise ValueError(f"cannot serialize certificates over {type(group).__name__}")
    lines.append(f"generates1 = {cert.generates1} ({cert.witness1})")
    lines.append(f"generates2 = {cert.generates2} ({cert.witness2})")
    for label, s in (("socles1", cert.sigma1), ("socles2", cert.sigma2)):
        if s.socle_orbit is not None:
            lines.append(f"{label} = " + " ".join(sorted(_element_to_str(e) for e in s.socle_orbit)))
    for label, s in (("elements1", cert.sigma1), ("elements2", cert.sigma2)):
        if s.element_set is not None:
            lines.append(f"{label} = " + " ".join(sorted(_element_to_str(e) for e in s.element_set)))
    lines.append(f"disjoint = {cert.disjoint}")
    lines.append(f"verdict = {'beauville' if cert.verdict else 'not-beauville'}")
    return "\n".join(lines) + "\n"


def certificate_from_text(text: str):
    """Rebuild (group, pair1, pair2, claimed) from a serialized certificate."""
    from .pcgroup import presentation_from_text

    lines = text.splitlines()
    fields: dict[str, str] = {}
    group = None
    i = 0
    while i < len(lines):
        line = lines[i].strip()
        if line == "group {":
            block = []
            i += 1
            while lines[i].strip() != "}":
                block.append(lines[i].strip())
                i += 1
            group = presentation_from_text("\n".join(block))
        elif "=" in line:
            key, val = line.split("=", 1)
            fields[key.strip()] = val.strip()
        i += 1
    if fields.get("group-kind") == "direct-square":
        group = DirectSquare(int(fields["n"]))
    if group is None:
        raise ValueError("certificate carries no group")

    def read_element(key: str):
        val = fields[key]
        if val.startswith("@"):
            return _element_from_str(val[1:])
        letters = parse_generator_word(val)
        if isinstance(group, PcPresentation):
            images = [group.gen(i) for i in range(group.ngens) if group.weights[i] == 1]
            from .pquotient import evaluate_word

            return evaluate_word(group, images, letters)
        raise ValueError("word-form elements need a pc group")

    pair1 = (read_element("pair1.x"), read_element("pair1.y"))
    pair2 = (read_element("pair2.x"), read_element("pair2.y"))
    claimed = {
        "verdict": fields["verdict"] == "beauville",
        "socles1": frozenset(
            _element_from_str(e) for e in fields.get("socles1", "").split() if e
        )
        if "socles1" in fields
        else None,
        "socles2": frozenset(
            _element_from_str(e) for e in fields.get("socles2", "").split() if e
        )
        if "socles2" in fields
        else None,
    }
    return group, pair1, pair2, claimed


def reverify_certificate_text(text: str, max_order: int | None = None) -> bool:
    """Re-run the full check from a serialized certificate and compare claims."""
    group, pair1, pair2, claimed = certificate_from_text(text)
    cert = beauville_check(group, pair1, pair2, elements=isinstance(group, DirectSquare), max_order=max_order)
    if cert.verdict != claimed["verdict"]:
        return False
    if claimed["socles1"] is not None and cert.sigma1.socle_orbit != claimed["socles1"]:
        return False
    if claimed["socles2"] is not None and cert.sigma2.socle_orbit != claimed["socles2"]:
        return False
    return True
