"""Finite small categories, cocycles and functors.

Two flavours share one duck-typed interface (``vertices``, ``morphisms()``,
``src``, ``rng``, ``identity``, ``compose``, ``with_range``, ``with_source``):

* :class:`Category` -- explicit finite tables with opaque string ids;
* graded views (see :mod:`skewcat.paths`) whose ``morphisms()`` enumerates a
  window up to a length budget while ``compose`` is exact.

Composition ``compose(a, b)`` is the product ``ab`` and is defined exactly
when ``src(a) == rng(b)``.  ``vC`` is :meth:`with_range`, ``Cv`` is
:meth:`with_source`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Mapping

from networkx.utils import UnionFind

from .errors import (
    AxiomViolation,
    BudgetedUnsupported,
    DuplicateId,
    MissingComposite,
    NotAFunctor,
    NotComposable,
    NotFunctorial,
    ValidationError,
    VertexNotUnit,
)
from .groups import FiniteGroup, FreeGroup, IntegerGroup


class CategoryBase:
    """Shared surface of explicit categories and graded views."""

    explicit = True
    budget: int | None = None
    vertices: tuple

    def try_compose(self, a, b):
        if self.src(a) != self.rng(b):
            return None
        return self.compose(a, b)

    def composable_pairs(self):
        for b in self.morphisms():
            for a in self.with_source(self.rng(b)):
                yield a, b

    def is_identity(self, m) -> bool:
        return m in self._identity_set

    @cached_property
    def _identity_set(self) -> frozenset:
        return frozenset(self.identity(v) for v in self.vertices)

    def non_identities(self):
        return [m for m in self.morphisms() if not self.is_identity(m)]

    def generators(self):
        """Generating morphisms (all non-identities for explicit tables)."""
        return self.non_identities()

    def vertex_of(self, m):
        """The vertex whose identity is ``m``."""
        return self._vertex_of_identity[m]

    @cached_property
    def _vertex_of_identity(self) -> dict:
        return {self.identity(v): v for v in self.vertices}


class Category(CategoryBase):
    """An explicit finite category.  Build through :func:`validate_category`."""

    def __init__(self, vertices, morphisms, src, rng, table, identities=None):
        self.vertices = tuple(vertices)
        self._morphisms = tuple(morphisms)
        self._src = dict(src)
        self._rng = dict(rng)
        self._table = dict(table)
        self._ident = dict(identities) if identities else {v: v for v in self.vertices}

    # --- interface --------------------------------------------------------
    def morphisms(self) -> tuple:
        return self._morphisms

    def src(self, m):
        return self._src[m]

    def rng(self, m):
        return self._rng[m]

    def identity(self, v):
        return self._ident[v]

    def compose(self, a, b):
        try:
            return self._table[(a, b)]
        except KeyError:
            raise NotComposable(f"({a!r}, {b!r}) is not composable", (a, b)) from None

    def try_compose(self, a, b):
        return self._table.get((a, b))

    @property
    def table(self) -> Mapping:
        return self._table

    @property
    def identities(self) -> Mapping:
        return self._ident

    def __len__(self):
        return len(self._morphisms)

    def __contains__(self, m):
        return m in self._src

    @cached_property
    def _by_range(self) -> dict:
        out = {v: [] for v in self.vertices}
        for m in self._morphisms:
            out[self._rng[m]].append(m)
        return {v: tuple(ms) for v, ms in out.items()}

    @cached_property
    def _by_source(self) -> dict:
        out = {v: [] for v in self.vertices}
        for m in self._morphisms:
            out[self._src[m]].append(m)
        return {v: tuple(ms) for v, ms in out.items()}

    def with_range(self, v) -> tuple:
        return self._by_range[v]

    def with_source(self, v) -> tuple:
        return self._by_source[v]

    @cached_property
    def _homs(self) -> dict:
        out: dict = {}
        for m in self._morphisms:
            out.setdefault((self._rng[m], self._src[m]), []).append(m)
        return {k: tuple(v) for k, v in out.items()}

    def hom(self, target, source) -> tuple:
        """``target C source``: morphisms from ``source`` to ``target``."""
        return self._homs.get((target, source), ())

    def composable_pairs(self):
        return iter(self._table)

    @cached_property
    def bit(self) -> dict:
        return {m: 1 << i for i, m in enumerate(self._morphisms)}

    @cached_property
    def _ideal_masks(self) -> dict:
        out = {}
        for a in self._morphisms:
            mask = 0
            for g in self._by_range[self._src[a]]:
                mask |= self.bit[self._table[(a, g)]]
            out[a] = mask
        return out

    def ideal_mask(self, a) -> int:
        """Bitmask of the principal right ideal ``aC``."""
        return self._ideal_masks[a]

    def from_mask(self, mask: int) -> list:
        return [m for m in self._morphisms if mask & self.bit[m]]

    def to_spec(self) -> dict:
        spec = {
            "vertices": list(self.vertices),
            "morphisms": [{"id": m, "src": self._src[m], "rng": self._rng[m]} for m in self._morphisms],
            "compose": [[a, b, c] for (a, b), c in self._table.items()],
        }
        if any(self._ident[v] != v for v in self.vertices):
            spec["identities"] = dict(self._ident)
        return spec

    def __repr__(self):
        return f"Category({len(self.vertices)} vertices, {len(self._morphisms)} morphisms)"


def validate_category(vertices, morphisms, compose, identities=None) -> Category:
    """Validate raw tables and return a :class:`Category`.

    ``morphisms`` maps id -> (src, rng) or is a list of ``{"id","src","rng"}``;
    ``compose`` is an iterable of ``(f, g, fg)`` triples.  Raises the first
    violated axiom with a witness.
    """
    vertices = list(vertices)
    if isinstance(morphisms, Mapping):
        mlist = [(m, s, r) for m, (s, r) in morphisms.items()]
    else:
        mlist = [(d["id"], d["src"], d["rng"]) for d in morphisms]
    if len(set(vertices)) != len(vertices):
        dup = next(v for v in vertices if vertices.count(v) > 1)
        raise DuplicateId(f"duplicate vertex {dup!r}", dup)
    ids = [m for m, _, _ in mlist]
    if len(set(ids)) != len(ids):
        seen = set()
        dup = next(m for m in ids if m in seen or seen.add(m))
        raise DuplicateId(f"duplicate morphism {dup!r}", dup)
    src = {m: s for m, s, _ in mlist}
    rng = {m: r for m, _, r in mlist}
    vset = set(vertices)
    for m, s, r in mlist:
        if s not in vset or r not in vset:
            raise AxiomViolation("endpoints", m, f"morphism {m!r} has an endpoint outside the vertex set")
    ident = dict(identities) if identities else {v: v for v in vertices}
    for v in vertices:
        e = ident.get(v)
        if e not in src:
            raise AxiomViolation("identity-exists", v, f"vertex {v!r} has no identity morphism")
        if src[e] != v or rng[e] != v:
            raise AxiomViolation("identity-endpoints", v, f"identity of {v!r} is not a loop at {v!r}")
    if len(set(ident[v] for v in vertices)) != len(vertices):
        raise AxiomViolation("distinct-identities", None, "two vertices share an identity")

    table: dict = {}
    for triple in compose:
        a, b, c = triple
        for x in (a, b, c):
            if x not in src:
                raise AxiomViolation("unknown-morphism", tuple(triple), f"unknown morphism {x!r}")
        if src[a] != rng[b]:
            raise AxiomViolation("composable-only", (a, b), f"({a!r}, {b!r}) is not composable")
        if (a, b) in table and table[(a, b)] != c:
            raise AxiomViolation("single-valued", (a, b), f"({a!r}, {b!r}) has two composites")
        table[(a, b)] = c

    by_range = {v: [m for m in ids if rng[m] == v] for v in vertices}
    for a in ids:
        for b in by_range[src[a]]:
            if (a, b) not in table:
                raise MissingComposite(f"missing composite for ({a!r}, {b!r})", (a, b))

    for (a, b), c in table.items():
        if rng[c] != rng[a] or src[c] != src[b]:
            raise AxiomViolation("range-source", (a, b, c))
    for a in ids:
        if table[(ident[rng[a]], a)] != a or table[(a, ident[src[a]])] != a:
            raise AxiomViolation("identity-law", a)
    for (a, b), ab in table.items():
        for c in by_range[src[b]]:
            if table[(ab, c)] != table[(a, table[(b, c)])]:
                raise AxiomViolation("associativity", (a, b, c))
    pos = {m: i for i, m in enumerate(ids)}
    ordered = sorted(table.items(), key=lambda kv: (pos[kv[0][0]], pos[kv[0][1]]))
    return Category(vertices, ids, src, rng, dict(ordered), ident)


def category_from_spec(spec: Mapping) -> Category:
    return validate_category(spec["vertices"], spec["morphisms"], spec["compose"], spec.get("identities"))


def materialize(view, label: Callable[[Hashable], str] = str, check: bool = True) -> tuple[Category, dict]:
    """Turn a finite view (any object with the category interface) into tables.

    Returns the category and the map ``view morphism -> string id``.
    """
    ms = list(view.morphisms())
    ids = {m: label(m) for m in ms}
    if len(set(ids.values())) != len(ids):
        raise DuplicateId("labelling is not injective", None)
    vlabel = {v: label(v) for v in view.vertices}
    morphisms = [{"id": ids[m], "src": vlabel[view.src(m)], "rng": vlabel[view.rng(m)]} for m in ms]
    by_range: dict = {}
    for m in ms:
        by_range.setdefault(view.rng(m), []).append(m)
    compose = []
    for a in ms:
        for b in by_range.get(view.src(a), ()):
            compose.append((ids[a], ids[b], ids[view.compose(a, b)]))
    identities = {vlabel[v]: ids[view.identity(v)] for v in view.vertices}
    verts = [vlabel[v] for v in view.vertices]
    if check:
        cat = validate_category(verts, morphisms, compose, identities)
    else:
        cat = Category(
            verts,
            [d["id"] for d in morphisms],
            {d["id"]: d["src"] for d in morphisms},
            {d["id"]: d["rng"] for d in morphisms},
            {(a, b): c for a, b, c in compose},
            identities,
        )
    return cat, ids


def relabel(cat: Category, mapping: Mapping[str, str], vmapping: Mapping[str, str] | None = None) -> Category:
    """Rename morphisms (and vertices); default vertex names follow identities."""
    if vmapping is None:
        vmapping = {v: mapping[cat.identity(v)] for v in cat.vertices}
    return Category(
        [vmapping[v] for v in cat.vertices],
        [mapping[m] for m in cat.morphisms()],
        {mapping[m]: vmapping[cat.src(m)] for m in cat.morphisms()},
        {mapping[m]: vmapping[cat.rng(m)] for m in cat.morphisms()},
        {(mapping[a], mapping[b]): mapping[c] for (a, b), c in cat.table.items()},
        {vmapping[v]: mapping[cat.identity(v)] for v in cat.vertices},
    )


# --- structural queries -------------------------------------------------------

def is_left_cancellative(cat) -> tuple[bool, tuple | None]:
    """Return ``(True, None)`` or ``(False, (a, b, c))`` with ``ab == ac``, ``b != c``.

    Graded views are checked inside their window.
    """
    for a in cat.morphisms():
        seen = {}
        for b in cat.with_range(cat.src(a)):
            ab = cat.compose(a, b)
            if ab in seen:
                return False, (a, b, seen[ab])
            seen[ab] = b
    return True, None


def invertibles(cat) -> frozenset:
    if not cat.explicit:
        raise BudgetedUnsupported("invertibles need the full morphism set")
    out = set()
    for g in cat.morphisms():
        r, s = cat.rng(g), cat.src(g)
        for d in cat.hom(s, r):
            if cat.compose(g, d) == cat.identity(r) and cat.compose(d, g) == cat.identity(s):
                out.add(g)
                break
    return frozenset(out)


def inverse_of(cat, g):
    for d in cat.hom(cat.src(g), cat.rng(g)):
        if cat.compose(g, d) == cat.identity(cat.rng(g)) and cat.compose(d, g) == cat.identity(cat.src(g)):
            return d
    return None


def equivalence_classes(cat) -> list[frozenset]:
    """Partition under ``a ~ b`` iff ``a = b u`` for an invertible ``u``.

    Classes are sorted by their least id.
    """
    inv = invertibles(cat)
    uf = UnionFind(cat.morphisms())
    for b in cat.morphisms():
        for u in cat.with_range(cat.src(b)):
            if u in inv:
                uf.union(b, cat.compose(b, u))
    return sorted((frozenset(c) for c in uf.to_sets()), key=lambda c: min(c))


def invertibles_and_equivalence(cat) -> tuple[frozenset, list[frozenset]]:
    return invertibles(cat), equivalence_classes(cat)


def canonical_representatives(cat) -> dict:
    """Map each morphism to the lexicographically least id in its ~-class."""
    out = {}
    for cls in equivalence_classes(cat):
        rep = min(cls)
        for m in cls:
            out[m] = rep
    return out


def connected_components(cat) -> list[frozenset]:
    """Vertex blocks of the equivalence generated by ``vCw != empty``."""
    uf = UnionFind(cat.vertices)
    for m in cat.generators() if not cat.explicit else cat.morphisms():
        uf.union(cat.rng(m), cat.src(m))
    return sorted((frozenset(c) for c in uf.to_sets()), key=lambda c: min(map(str, c)))


def is_connected(cat) -> bool:
    return len(connected_components(cat)) <= 1


# --- cocycles -------------------------------------------------------------------

class Cocycle:
    """A functor into a group.  ``values`` is a table (explicit) or a callable."""

    def __init__(self, category, target, values):
        self.category = category
        self.target = target
        if callable(values) and not isinstance(values, Mapping):
            self._fn = values
            self._table = None
        else:
            self._table = dict(values)
            self._fn = self._table.__getitem__

    def __call__(self, m):
        return self._fn(m)

    @property
    def table(self) -> dict:
        if self._table is None:
            self._table = {m: self._fn(m) for m in self.category.morphisms()}
        return self._table

    def image(self) -> set:
        return {self(m) for m in self.category.morphisms()}

    def is_nondegenerate(self) -> bool:
        return generates(self.target, self.image())

    def __repr__(self):
        return f"Cocycle(into {self.target!r})"


def generates(group, elements) -> bool:
    """Whether ``elements`` generate ``group`` (finite, Z, or free)."""
    elements = list(elements)
    if isinstance(group, FiniteGroup):
        return group.generates(elements)
    if isinstance(group, IntegerGroup):
        import math

        return math.gcd(*[abs(x) for x in elements], 0) == 1
    if isinstance(group, FreeGroup):
        return _stallings_is_whole(group, elements)
    raise TypeError(f"cannot decide generation in {group!r}")


def _stallings_is_whole(group: FreeGroup, words) -> bool:
    # Fold the bouquet of petals; the subgroup is everything iff the folded
    # graph is a single vertex carrying a loop for every letter.
    edges = []
    nverts = 1
    for w in words:
        if not w:
            continue
        prev = 0
        for i, (x, e) in enumerate(w):
            nxt = 0 if i == len(w) - 1 else nverts
            if nxt:
                nverts += 1
            edges.append((prev, x, nxt) if e == 1 else (nxt, x, prev))
            prev = nxt
    parent = list(range(nverts))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    changed = True
    while changed:
        changed = False
        out, inn = {}, {}
        for a, x, b in edges:
            a, b = find(a), find(b)
            for table, key, val in ((out, (a, x), b), (inn, (b, x), a)):
                other = table.get(key)
                if other is None:
                    table[key] = val
                elif find(other) != find(val):
                    parent[find(other)] = find(val)
                    changed = True
    verts = {find(v) for v in range(nverts)}
    letters = {x for _, x, _ in edges}
    return len(verts) == 1 and letters == set(group.alphabet)


def validate_cocycle(cat, target, values) -> tuple[Cocycle, bool]:
    """Check functoriality and ``value(v) == unit``; report nondegeneracy.

    ``values`` maps morphism -> element (names accepted for finite groups),
    or is a callable.
    """
    if isinstance(values, Mapping):
        parsed = {}
        for m in cat.morphisms():
            if m not in values:
                raise ValidationError(f"cocycle has no value on {m!r}", m)
            parsed[m] = target.element(values[m]) if not target.contains(values[m]) else values[m]
        eta = Cocycle(cat, target, parsed)
    else:
        eta = Cocycle(cat, target, values)
    for v in cat.vertices:
        if eta(cat.identity(v)) != target.unit:
            raise VertexNotUnit(f"cocycle is not the unit at vertex {v!r}", v)
    for a, b in cat.composable_pairs():
        if eta(cat.compose(a, b)) != target.mul(eta(a), eta(b)):
            raise NotFunctorial(f"value({a!r} . {b!r}) != value({a!r}) value({b!r})", (a, b))
    return eta, eta.is_nondegenerate()


# --- functors ---------------------------------------------------------------------

@dataclass
class CatFunctor:
    domain: object
    codomain: object
    vmap: dict
    mmap: dict

    def __call__(self, m):
        return self.mmap[m]


def check_functor(f: CatFunctor) -> None:
    """Raise :class:`NotAFunctor` with a witness unless ``f`` is a functor."""
    d, c = f.domain, f.codomain
    for v in d.vertices:
        if f.mmap[d.identity(v)] != c.identity(f.vmap[v]):
            raise NotAFunctor(f"identity of {v!r} not preserved", v)
    for m in d.morphisms():
        fm = f.mmap[m]
        if c.src(fm) != f.vmap[d.src(m)] or c.rng(fm) != f.vmap[d.rng(m)]:
            raise NotAFunctor(f"endpoints of {m!r} not preserved", m)
    for a, b in d.composable_pairs():
        if f.mmap[d.compose(a, b)] != c.compose(f.mmap[a], f.mmap[b]):
            raise NotAFunctor(f"composition ({a!r}, {b!r}) not preserved", (a, b))


def is_functor(f: CatFunctor) -> bool:
    try:
        check_functor(f)
    except (NotAFunctor, KeyError, NotComposable):
        return False
    return True


def is_isomorphism(f: CatFunctor) -> bool:
    d, c = f.domain, f.codomain
    if len(set(f.vmap.values())) != len(d.vertices) or set(f.vmap.values()) != set(c.vertices):
        return False
    ms = list(d.morphisms())
    if len(set(f.mmap[m] for m in ms)) != len(ms) or set(f.mmap[m] for m in ms) != set(c.morphisms()):
        return False
    return is_functor(f)


def identity_functor(cat) -> CatFunctor:
    return CatFunctor(cat, cat, {v: v for v in cat.vertices}, {m: m for m in cat.morphisms()})


def compose_functors(g: CatFunctor, f: CatFunctor) -> CatFunctor:
    """``g after f``."""
    return CatFunctor(
        f.domain,
        g.codomain,
        {v: g.vmap[w] for v, w in f.vmap.items()},
        {m: g.mmap[n] for m, n in f.mmap.items()},
    )


def invert_functor(f: CatFunctor) -> CatFunctor:
    return CatFunctor(f.codomain, f.domain, {w: v for v, w in f.vmap.items()}, {n: m for m, n in f.mmap.items()})


def _vertex_signature(cat, v):
    loops = len(cat.hom(v, v))
    return (len(cat.with_range(v)), len(cat.with_source(v)), loops)


def find_isomorphism(c: Category, d: Category, limit: int = 200_000) -> CatFunctor | None:
    """Backtracking isomorphism search between explicit categories.

    Vertices are matched first (by degree signatures and hom-set sizes), then
    morphisms hom-set by hom-set with composites forced by propagation.
    ``limit`` bounds the number of search nodes; ``None`` is returned when the
    categories are not isomorphic (or the limit is hit, see ``LimitHit``).
    """
    if len(c.vertices) != len(d.vertices) or len(c) != len(d):
        return None
    csig = {v: _vertex_signature(c, v) for v in c.vertices}
    dsig = {v: _vertex_signature(d, v) for v in d.vertices}
    if sorted(csig.values()) != sorted(dsig.values()):
        return None
    chom = {(u, v): len(c.hom(u, v)) for u in c.vertices for v in c.vertices}
    dhom = {(u, v): len(d.hom(u, v)) for u in d.vertices for v in d.vertices}
    cverts = sorted(c.vertices, key=lambda v: csig[v])
    budget = [limit]

    def vertex_maps(i, vmap, used):
        if i == len(cverts):
            yield dict(vmap)
            return
        v = cverts[i]
        for w in d.vertices:
            if w in used or dsig[w] != csig[v]:
                continue
            if any(chom[(v, u)] != dhom[(w, vmap[u])] or chom[(u, v)] != dhom[(vmap[u], w)] for u in vmap):
                continue
            if chom[(v, v)] != dhom[(w, w)]:
                continue
            vmap[v] = w
            used.add(w)
            yield from vertex_maps(i + 1, vmap, used)
            del vmap[v]
            used.discard(w)

    order = sorted(c.morphisms(), key=lambda m: (c.is_identity(m), -len(c.with_range(c.src(m)))))
    for vmap in vertex_maps(0, {}, set()):
        mmap = {c.identity(v): d.identity(w) for v, w in vmap.items()}
        found = _match_morphisms(c, d, vmap, mmap, order, budget)
        if found is not None:
            return CatFunctor(c, d, vmap, found)
        if budget[0] <= 0:
            break
    return None


def _propagate(c, d, mmap, inv_used, new):
    """Assign composites forced by new assignments; False on contradiction."""
    stack = list(new)
    while stack:
        a = stack.pop()
        partners = [(a, b) for b in c.with_range(c.src(a)) if b in mmap]
        partners += [(b, a) for b in c.with_source(c.rng(a)) if b in mmap]
        for x, y in partners:
            xy = c.compose(x, y)
            fxy = d.try_compose(mmap[x], mmap[y])
            if fxy is None:
                return False
            if xy in mmap:
                if mmap[xy] != fxy:
                    return False
            else:
                if fxy in inv_used:
                    return False
                mmap[xy] = fxy
                inv_used.add(fxy)
                stack.append(xy)
    return True


def _match_morphisms(c, d, vmap, mmap, order, budget):
    inv_used = set(mmap.values())
    if not _propagate(c, d, mmap, inv_used, list(mmap)):
        return None

    def rec(mmap, inv_used):
        budget[0] -= 1
        if budget[0] <= 0:
            return None
        todo = next((m for m in order if m not in mmap), None)
        if todo is None:
            return mmap
        for cand in d.hom(vmap[c.rng(todo)], vmap[c.src(todo)]):
            if cand in inv_used:
                continue
            m2, u2 = dict(mmap), set(inv_used)
            m2[todo] = cand
            u2.add(cand)
            if _propagate(c, d, m2, u2, [todo]):
                out = rec(m2, u2)
                if out is not None:
                    return out
        return None

    return rec(dict(mmap), inv_used)


def are_isomorphic(c: Category, d: Category) -> bool:
    f = find_isomorphism(c, d)
    return f is not None and is_isomorphism(f)
