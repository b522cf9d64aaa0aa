"""Finitely presented groups: Tietze simplification and computable invariants.

Isomorphism of presented groups is undecidable, so presentations are only
ever compared through :func:`fp_invariants`: the abelianization (invariant
factors, ``0`` for each free summand) and homomorphism counts into a fixed
battery of small groups.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors

from .errors import BatteryTooLarge, ParseError
from .groups import FiniteGroup, Word, battery, invert_word, reduce_word

DEFAULT_HOM_BOUND = 2_000_000


def cyclic_reduce(word: Word) -> Word:
    word = reduce_word(word)
    while len(word) >= 2 and word[0][0] == word[-1][0] and word[0][1] == -word[-1][1]:
        word = word[1:-1]
    return word


def _canonical_relator(word: Word) -> Word:
    """Least rotation of the word or its inverse, so equal relators dedupe."""
    word = cyclic_reduce(word)
    if not word:
        return word
    cands = []
    for w in (word, invert_word(word)):
        cands += [w[i:] + w[:i] for i in range(len(w))]
    return min(cands)


def render_word(word: Word) -> str:
    """``a^2 b^-1`` style; the empty word renders as ``1``."""
    parts = []
    i = 0
    while i < len(word):
        x, e = word[i]
        j = i
        while j < len(word) and word[j] == (x, e):
            j += 1
        n = (j - i) * e
        parts.append(x if n == 1 else f"{x}^{n}")
        i = j
    return " ".join(parts) or "1"


_TOKEN = re.compile(r"^([^\s^]+)(?:\^(-?\d+))?$")


def parse_word(text: str, alphabet=None) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return ()
    out = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise ParseError(f"bad word token {tok!r}", tok)
        x, n = m.group(1), int(m.group(2) or 1)
        if alphabet is not None and x not in alphabet:
            raise ParseError(f"letter {x!r} is not a generator", x)
        out += [(x, 1 if n > 0 else -1)] * abs(n)
    return reduce_word(out)


@dataclass
class FpGroup:
    generators: tuple
    relators: tuple
    # eliminated generator -> word in the final generators
    eliminated: dict = field(default_factory=dict)

    def __post_init__(self):
        self.generators = tuple(self.generators)
        self.relators = tuple(reduce_word(r) for r in self.relators)

    def render(self) -> str:
        rels = ", ".join(render_word(r) for r in self.relators)
        gens = ", ".join(self.generators)
        return f"⟨ {gens} | {rels} ⟩".replace("⟨  |", "⟨ |").replace("|  ⟩", "| ⟩")

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "relators": [render_word(r) for r in self.relators]}

    @classmethod
    def from_json(cls, data) -> "FpGroup":
        gens = [str(g) for g in data.get("generators", [])]
        rels = [parse_word(r, set(gens)) if isinstance(r, str) else reduce_word((str(x), int(e)) for x, e in r) for r in data.get("relators", [])]
        return cls(gens, rels)

    def resolve(self, word: Word) -> Word:
        """Rewrite a word over pre-simplification generators into the final ones."""
        out = []
        for x, e in word:
            w = self.eliminated.get(x, ((x, 1),))
            out += list(w if e == 1 else invert_word(w))
        return reduce_word(out)

    @property
    def rank_if_free(self):
        return len(self.generators) if not self.relators else None


def free_product(*groups: FpGroup, prefixes=None) -> FpGroup:
    gens, rels, elim = [], [], {}
    for i, g in enumerate(groups):
        p = prefixes[i] if prefixes else ""
        ren = {x: f"{p}{x}" for x in g.generators}
        gens += [ren[x] for x in g.generators]
        rels += [tuple((ren[x], e) for x, e in r) for r in g.relators]
        for x, w in g.eliminated.items():
            elim[f"{p}{x}"] = tuple((ren[y], e) for y, e in w)
    return FpGroup(gens, rels, elim)


def simplify(group: FpGroup) -> FpGroup:
    """Tietze moves until stable.

    Drops trivial and duplicate relators and repeatedly eliminates a generator
    occurring exactly once in some relator (shortest such relator first).
    Eliminations are recorded so words over the old generators can be resolved.
    """
    gens = list(group.generators)
    rels = [cyclic_reduce(r) for r in group.relators]
    elim: dict = dict(group.eliminated)

    def subst(word, x, w):
        out = []
        for y, e in word:
            if y == x:
                out += list(w if e == 1 else invert_word(w))
            else:
                out.append((y, e))
        return reduce_word(out)

    while True:
        seen = {}
        for r in rels:
            r = cyclic_reduce(r)
            if r:
                seen.setdefault(_canonical_relator(r), r)
        rels = sorted(seen.values(), key=lambda r: (len(r), r))
        best = None
        for r in rels:
            counts: dict = {}
            for y, _ in r:
                counts[y] = counts.get(y, 0) + 1
            singles = [y for y in gens if counts.get(y) == 1]
            if singles:
                best = (r, singles[0])
                break
        if best is None:
            break
        r, x = best
        i = next(k for k, (y, _) in enumerate(r) if y == x)
        e = r[i][1]
        # r = u x^e v  ==>  x^e = u^-1 v^-1  ==>  x = (v u)^-e
        u, v = r[:i], r[i + 1 :]
        w = reduce_word(v + u)
        w = invert_word(w) if e == 1 else w
        gens.remove(x)
        rels = [subst(q, x, w) for q in rels if q is not r]
        elim = {y: subst(ww, x, w) for y, ww in elim.items()}
        elim[x] = w
    return FpGroup(gens, rels, elim)


def abelianization(group: FpGroup) -> list[int]:
    """Invariant factors ``d1 | d2 | ...`` (each > 1) followed by a ``0`` per free summand."""
    n = len(group.generators)
    if n == 0:
        return []
    idx = {x: i for i, x in enumerate(group.generators)}
    rows = []
    for r in group.relators:
        row = [0] * n
        for x, e in r:
            row[idx[x]] += e
        if any(row):
            rows.append(row)
    if not rows:
        return [0] * n
    m = Matrix(rows)
    rank = m.rank()
    torsion = sorted(int(abs(d)) for d in invariant_factors(m) if abs(d) > 1)
    return torsion + [0] * (n - rank)


def hom_count(group: FpGroup, target: FiniteGroup, bound: int = DEFAULT_HOM_BOUND) -> int:
    """Number of assignments generators -> ``target`` under which every relator is trivial.

    Generators absent from every relator contribute a factor ``|target|`` each.
    The rest are assigned by backtracking, checking a relator as soon as its
    last letter is set; more than ``bound`` search nodes raises BatteryTooLarge.
    """
    involved = []
    for r in group.relators:
        for x, _ in r:
            if x not in involved:
                involved.append(x)
    free = [x for x in group.generators if x not in involved]
    position = {x: i for i, x in enumerate(involved)}
    checks = [[] for _ in involved]
    for r in group.relators:
        last = max(position[x] for x, _ in r)
        checks[last].append(r)
    inv = [target.inv(g) for g in target.elements]
    value: dict = {}
    visited = 0

    def holds(r):
        acc = target.unit
        for x, e in r:
            g = value[x]
            acc = target.mul(acc, g if e == 1 else inv[g])
        return acc == target.unit

    def rec(i):
        nonlocal visited
        if i == len(involved):
            return 1
        total = 0
        x = involved[i]
        for g in target.elements:
            visited += 1
            if visited > bound:
                raise BatteryTooLarge(
                    f"hom search into {target.label} exceeded {bound} nodes",
                    {"target": target.label, "constrained_generators": len(involved)},
                )
            value[x] = g
            if all(holds(r) for r in checks[i]):
                total += rec(i + 1)
        return total

    return rec(0) * target.order ** len(free)


@dataclass(frozen=True)
class Invariants:
    abelianization: tuple
    hom_counts: tuple  # (label, count) per battery group

    def to_json(self) -> dict:
        return {"abelianization": list(self.abelianization), "hom_counts": dict(self.hom_counts)}


def fp_invariants(group: FpGroup, bound: int = DEFAULT_HOM_BOUND, groups=None) -> Invariants:
    simple = simplify(group)
    counts = tuple((k.label, hom_count(simple, k, bound)) for k in (groups or battery()))
    return Invariants(tuple(abelianization(simple)), counts)


def free_group(rank: int, prefix: str = "x") -> FpGroup:
    return FpGroup([f"{prefix}{i}" for i in range(rank)], [])
