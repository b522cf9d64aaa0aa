"""Coverings, transformation categories, cocycle actions and deck transformations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from networkx.utils import UnionFind

from .category import CatFunctor, CategoryBase, Cocycle, check_functor, connected_components, materialize
from .errors import NotAFunctor, NotAnAction, NotComposable, SearchBudgetExceeded, VerificationFailed

MAX_DECK_MORPHISMS = 60


def covering_witness(p: CatFunctor):
    """``None`` if ``p`` is a covering, else ``(vertex or None, reason)``."""
    check_functor(p)
    D, C = p.domain, p.codomain
    if {p.mmap[m] for m in D.morphisms()} != set(C.morphisms()):
        missing = sorted(set(C.morphisms()) - {p.mmap[m] for m in D.morphisms()}, key=str)
        return (None, f"not surjective: {missing[0]!r} is not hit")
    for v in D.vertices:
        pv = p.vmap[v]
        for direction, ups, downs in (
            ("source", D.with_source(v), C.with_source(pv)),
            ("range", D.with_range(v), C.with_range(pv)),
        ):
            images = [p.mmap[m] for m in ups]
            if len(set(images)) != len(images):
                return (v, f"{direction}: restriction is not injective")
            if set(images) != set(downs):
                return (v, f"{direction}: restriction is not surjective")
    return None


def is_covering(p: CatFunctor) -> tuple[bool, object]:
    """Surjective, and bijective on ``Dv -> C p(v)`` and ``vD -> p(v)C`` for every ``v``.

    Graded views are checked inside their windows.
    """
    w = covering_witness(p)
    return w is None, w


# --- transformation categories -------------------------------------------------------------

class _TransformationView(CategoryBase):
    def __init__(self, base, fibers, act):
        self.base = base
        self.fibers = fibers
        self.act = act
        self.vertices = tuple((v, w) for v in base.vertices for w in fibers[v])

    def morphisms(self):
        return [(a, w) for a in self.base.morphisms() for w in self.fibers[self.base.src(a)]]

    def src(self, m):
        a, w = m
        return (self.base.src(a), w)

    def rng(self, m):
        a, w = m
        return (self.base.rng(a), self.act(a, w))

    def identity(self, v):
        return (self.base.identity(v[0]), v[1])

    def compose(self, p, q):
        (a, u), (b, w) = p, q
        if self.base.src(a) != self.base.rng(b) or u != self.act(b, w):
            raise NotComposable(f"({p!r}, {q!r}) is not composable", (p, q))
        return (self.base.compose(a, b), w)

    def with_source(self, v):
        return [m for m in self.morphisms() if self.src(m) == v]


@dataclass
class TransformationCategory:
    category: object
    ids: dict  # (a, w) -> id


def check_category_action(cat, fibers: dict, act) -> None:
    """``act(a, w)`` must carry ``V_{s(a)}`` bijectively onto ``V_{r(a)}`` and respect composition."""
    for v in cat.vertices:
        for w in fibers[v]:
            if act(cat.identity(v), w) != w:
                raise NotAnAction("identity does not act trivially", (v, w))
    for a in cat.morphisms():
        imgs = [act(a, w) for w in fibers[cat.src(a)]]
        if sorted(map(str, imgs)) != sorted(map(str, fibers[cat.rng(a)])):
            raise NotAnAction(f"{a!r} does not act bijectively between fibers", a)
    for a, b in cat.composable_pairs():
        ab = cat.compose(a, b)
        for w in fibers[cat.src(b)]:
            if act(a, act(b, w)) != act(ab, w):
                raise NotAnAction("(ab)w != a(bw)", (a, b, w))


def transformation_category(cat, fibers: dict, act, check: bool = True) -> TransformationCategory:
    """``C * V`` with ``s(a, w) = (s(a), w)``, ``r(a, w) = (r(a), a w)`` and ``(a, b w)(b, w) = (ab, w)``."""
    if check:
        check_category_action(cat, fibers, act)
    view = _TransformationView(cat, fibers, act)

    def label(p):
        a, w = p
        return f"{a}*{w}"

    tc, ids = materialize(view, label, check=check)
    return TransformationCategory(tc, ids)


# --- cocycle actions -----------------------------------------------------------------

@dataclass
class CocycleAction:
    """``a (s(a), g) = (r(a), eta(a) g)`` on ``C^0 x G``."""

    category: object
    cocycle: Cocycle

    @property
    def group(self):
        return self.cocycle.target

    def fibers(self) -> dict:
        return {v: list(self.group.elements) for v in self.category.vertices}

    def act(self, a, g):
        return self.group.mul(self.cocycle(a), g)

    def points(self):
        return [(v, g) for v in self.category.vertices for g in self.group.elements]


def orbits_and_stabilizers(ca: CocycleAction) -> tuple[list, dict]:
    """Orbit partition of ``C^0 x G`` and, per point, the loops fixing it."""
    cat, G = ca.category, ca.group
    uf = UnionFind(ca.points())
    for a in cat.morphisms():
        for g in G.elements:
            uf.union((cat.src(a), g), (cat.rng(a), ca.act(a, g)))
    orbits = sorted((sorted(o, key=lambda p: (str(p[0]), p[1])) for o in uf.to_sets()), key=lambda o: (str(o[0][0]), o[0][1]))
    stab = {}
    for v, g in ca.points():
        stab[(v, g)] = frozenset(a for a in cat.hom(v, v) if ca.act(a, g) == g)
    return orbits, stab


def is_transitive(ca: CocycleAction) -> bool:
    return len(orbits_and_stabilizers(ca)[0]) == 1


def stabilizers_conjugate(ca: CocycleAction, inverse) -> bool:
    """Along every morphism ``a: (v, g) -> (w, a g)`` check ``S_w = a S_v a^-1``."""
    cat = ca.category
    _, stab = orbits_and_stabilizers(ca)
    for a in cat.morphisms():
        v, w = cat.src(a), cat.rng(a)
        ai = inverse[a]
        for g in ca.group.elements:
            moved = frozenset(cat.compose(a, cat.compose(s, ai)) for s in stab[(v, g)])
            if moved != stab[(w, ca.act(a, g))]:
                return False
    return True


def skew_transformation_iso(sp) -> CatFunctor:
    """Verify ``(a, (s(a), g)) -> (a, g)`` from the cocycle-action transformation category onto the skew product."""
    ca = CocycleAction(sp.base, sp.cocycle)
    tc = transformation_category(sp.base, ca.fibers(), ca.act)
    T, S = tc.category, sp.category
    mmap = {tc.ids[(a, g)]: sp.id_of((a, g)) for (a, g) in tc.ids}
    vmap = {T.vertex_of(tc.ids[(sp.base.identity(v), g)]): sp.vertex_id(v, g) for v in sp.base.vertices for g in sp.group.elements}
    f = CatFunctor(T, S, vmap, mmap)
    from .category import is_isomorphism

    if not is_isomorphism(f):
        raise VerificationFailed("transformation category is not isomorphic to the skew product", None)
    return f


# --- deck transformations ---------------------------------------------------------------

@dataclass
class DeckGroup:
    elements: list  # each a dict morphism -> morphism
    table: list  # table[i][j] = index of elements[i] after elements[j]

    @property
    def order(self) -> int:
        return len(self.elements)

    def index_of(self, mmap) -> int | None:
        for i, e in enumerate(self.elements):
            if all(e[m] == mmap[m] for m in e):
                return i
        return None


def _lift(p: CatFunctor, m, start, along_source: bool):
    """The unique morphism with ``p``-image ``p(m)`` starting (or ending) at ``start``."""
    D = p.domain
    pool = D.with_source(start) if along_source else D.with_range(start)
    target = p.mmap[m]
    hits = [n for n in pool if p.mmap[n] == target]
    return hits[0] if len(hits) == 1 else None


def deck_transformations(p: CatFunctor, limit: int = MAX_DECK_MORPHISMS) -> DeckGroup:
    """All automorphisms ``phi`` of the total space with ``p o phi = p``.

    One root vertex per component is sent anywhere in its fiber; the rest is
    forced by unique lifting, then functoriality and bijectivity are checked.
    """
    D = p.domain
    ms = list(D.morphisms())
    if len(ms) > limit:
        raise SearchBudgetExceeded(f"deck search is capped at {limit} morphisms", len(ms))
    comps = connected_components(D)
    roots = [sorted(c, key=str)[0] for c in comps]
    fiber = {v: [w for w in D.vertices if p.vmap[w] == p.vmap[v]] for v in roots}
    gens = D.generators() if not D.explicit else ms
    found = []
    for choice in itertools.product(*(fiber[r] for r in roots)):
        vmap = dict(zip(roots, choice))
        mmap: dict = {}
        ok = True
        changed = True
        while changed and ok:
            changed = False
            for m in gens:
                if m in mmap:
                    continue
                s, r = D.src(m), D.rng(m)
                img = None
                if s in vmap:
                    img = _lift(p, m, vmap[s], along_source=True)
                elif r in vmap:
                    img = _lift(p, m, vmap[r], along_source=False)
                else:
                    continue
                if img is None:
                    ok = False
                    break
                for old, new in ((s, D.src(img)), (r, D.rng(img))):
                    if vmap.setdefault(old, new) != new:
                        ok = False
                mmap[m] = img
                changed = True
        if not ok or len(vmap) != len(D.vertices):
            continue
        if not D.explicit:
            # extend from generators to the window via unique lifts at sources
            for m in ms:
                if m not in mmap:
                    img = _lift(p, m, vmap[D.src(m)], along_source=True)
                    if img is None:
                        ok = False
                        break
                    mmap[m] = img
        if not ok:
            continue
        if len(set(mmap.values())) != len(ms) or len(set(vmap.values())) != len(D.vertices):
            continue
        f = CatFunctor(D, D, vmap, mmap)
        try:
            check_functor(f)
        except (NotAFunctor, KeyError, NotComposable):
            continue
        if any(p.mmap[mmap[m]] != p.mmap[m] for m in ms):
            continue
        found.append(mmap)
    table = []
    for a in found:
        row = []
        for b in found:
            comp = {m: a[b[m]] for m in ms}
            idx = next(i for i, c in enumerate(found) if all(c[m] == comp[m] for m in ms))
            row.append(idx)
        table.append(row)
    return DeckGroup(found, table)


def translations_embed(sp, deck: DeckGroup) -> bool:
    """The right translations ``(a, g) -> (a, g k)`` are distinct deck transformations composing like ``G``."""
    from .skew import right_translation

    G = sp.group
    idx = {}
    for k in G.elements:
        i = deck.index_of(right_translation(sp, k))
        if i is None:
            return False
        idx[k] = i
    if len(set(idx.values())) != G.order:
        return False
    # (a, g) k l = (a, g k l): translation by kl is "translation by l after translation by k"
    return all(deck.table[idx[l]][idx[k]] == idx[G.mul(k, l)] for k in G.elements for l in G.elements)
