"""Category systems, Zappa-Szép products, invariant cocycles and Exel-Pardo data.

For a system ``(C, H, phi)`` the product ``C x|^phi H`` has morphisms ``(a, h)``
with

* ``r(a, h) = (r(a), e)`` and ``s(a, h) = (h^-1 s(a), e)``;
* ``(a, h)(b, h') = (a (h b), phi(h, b) h')`` whenever ``h^-1 s(a) = r(b)``.

The axioms on ``phi`` are not hard-coded: a system is accepted exactly when
the constructed product passes category validation (on the whole table, or
on the window for graded inputs).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .category import (
    CatFunctor,
    Category,
    Cocycle,
    check_functor,
    is_isomorphism,
    materialize,
)
from .errors import (
    NotACategory,
    NotAction,
    NotInvariant,
    ShapeMismatch,
    SkewcatError,
    ValidationError,
    VerificationFailed,
    ZeroColumn,
)
from .groups import FiniteGroup
from .paths import GradedView, Graph, PathCategory


def _as_function(table) -> Callable:
    if callable(table) and not isinstance(table, Mapping):
        return table
    return lambda h, m: table[h][m]


@dataclass
class CategorySystem:
    """``act(h, a)`` is ``h . a`` and ``phi(h, a)`` the cocycle; ``h`` is an element index."""

    category: object
    group: FiniteGroup
    act: Callable
    phi: Callable

    def __post_init__(self):
        self.act = _as_function(self.act)
        self.phi = _as_function(self.phi)

    def act_vertex(self, h, v):
        c = self.category
        return c.vertex_of(self.act(h, c.identity(v)))


class ZSView(GradedView):
    def __init__(self, system: CategorySystem):
        self.system = system
        base = system.category
        self.base = base
        self.explicit = base.explicit
        self.budget = base.budget
        self.vertices = tuple((v, system.group.unit) for v in base.vertices)

    def _enumerate(self):
        return [(a, h) for a in self.base.morphisms() for h in self.system.group.elements]

    def degree(self, m) -> int:
        return self.base.degree(m[0]) if hasattr(self.base, "degree") else 0

    def src(self, m):
        a, h = m
        return (self.system.act_vertex(self.system.group.inv(h), self.base.src(a)), self.system.group.unit)

    def rng(self, m):
        return (self.base.rng(m[0]), self.system.group.unit)

    def identity(self, v):
        return (self.base.identity(v[0]), self.system.group.unit)

    def compose(self, p, q):
        (a, h), (b, k) = p, q
        sysm, base = self.system, self.base
        if sysm.act_vertex(h, base.rng(b)) != base.src(a):
            from .errors import NotComposable

            raise NotComposable(f"({p!r}, {q!r}) is not composable", (p, q))
        return (base.compose(a, sysm.act(h, b)), sysm.group.mul(sysm.phi(h, b), k))

    def generators(self):
        gens = list(self.base.generators()) + [self.base.identity(v) for v in self.base.vertices]
        return [(a, h) for a in gens for h in self.system.group.elements]


def zs_label(group: FiniteGroup):
    def label(p):
        a, h = p
        return f"{a}⋊{group.name_of(h)}"

    return label


@dataclass
class PairProduct:
    """A product category on pairs, with id <-> pair bookkeeping."""

    category: object
    _to_id: dict = field(repr=False)
    _to_pair: dict = field(repr=False)
    _view: object = field(default=None, repr=False)

    def id_of(self, pair):
        return self._to_id[pair]

    def pair_of(self, m):
        return self._to_pair[m]

    def vertex_id(self, pair_vertex):
        if not self.category.explicit:
            return pair_vertex
        return self.category.vertex_of(self._to_id[self._identity_pair(pair_vertex)])

    def _identity_pair(self, pv):
        return self._view.identity(pv)


def _build_pairs(view, label) -> PairProduct:
    if view.explicit:
        try:
            cat, ids = materialize(view, label, check=True)
        except ValidationError as exc:
            raise NotACategory(f"product is not a category: {exc}", exc.witness) from None
        return PairProduct(cat, ids, {i: p for p, i in ids.items()}, view)
    check_window(view)
    ids = {m: m for m in view.morphisms()}
    return PairProduct(view, ids, dict(ids), view)


def check_window(view) -> None:
    """Category axioms on a graded window; raises :class:`NotACategory`."""
    try:
        for m in view.morphisms():
            if view.compose(view.identity(view.rng(m)), m) != m or view.compose(m, view.identity(view.src(m))) != m:
                raise NotACategory("identity law fails", m)
        room = view.budget
        for a, b in view.composable_pairs():
            ab = view.compose(a, b)
            if view.rng(ab) != view.rng(a) or view.src(ab) != view.src(b):
                raise NotACategory("range/source of a product", (a, b))
            for c in view.with_range(view.src(b)):
                if room is not None and view.degree(ab) + view.degree(c) > room:
                    continue
                if view.compose(ab, c) != view.compose(a, view.compose(b, c)):
                    raise NotACategory("associativity fails", (a, b, c))
    except NotACategory:
        raise
    except SkewcatError as exc:
        raise NotACategory(f"product is not a category: {exc}", exc.witness) from None


def zs_product(system: CategorySystem) -> PairProduct:
    """``C x|^phi H`` (explicit tables, or a checked window for graded ``C``)."""
    for h in system.group.elements:
        for a in system.category.morphisms():
            b = system.act(h, a)
            c = system.category
            if c.rng(b) != system.act_vertex(h, c.rng(a)) or c.src(b) != system.act_vertex(h, c.src(a)):
                raise NotAction("the action does not commute with range and source", (system.group.name_of(h), a))
    return _build_pairs(ZSView(system), zs_label(system.group))


class _SemidirectView(ZSView):
    def compose(self, p, q):
        (a, h), (b, k) = p, q
        sysm = self.system
        return (self.base.compose(a, sysm.act(h, b)), sysm.group.mul(h, k))


def semidirect_direct(category, group: FiniteGroup, act) -> PairProduct:
    """``D x| G`` with ``(a, h)(b, k) = (a (h b), hk)``, built without any cocycle."""
    system = CategorySystem(category, group, act, lambda h, a: h)
    return _build_pairs(_SemidirectView(system), zs_label(group))


class _DirectView(ZSView):
    def src(self, m):
        return (self.base.src(m[0]), self.system.group.unit)

    def compose(self, p, q):
        (a, h), (b, k) = p, q
        return (self.base.compose(a, b), self.system.group.mul(h, k))


def direct_product(category, group: FiniteGroup) -> PairProduct:
    """``C x H`` with ``H`` regarded as a one-object category."""
    system = CategorySystem(category, group, lambda h, a: a, lambda h, a: h)
    return _build_pairs(_DirectView(system), zs_label(group))


def trivial_action(category, group: FiniteGroup) -> dict:
    return {h: {m: m for m in category.morphisms()} for h in group.elements}


# --- invariant cocycles ----------------------------------------------------------------

def invariance_witness(system: CategorySystem, psi: Cocycle):
    for a in system.category.morphisms():
        for h in system.group.elements:
            if psi(system.act(h, a)) != psi(a):
                return (system.group.name_of(h), a)
    return None


def promote_invariant_cocycle(system: CategorySystem, psi: Cocycle, product: PairProduct | None = None) -> tuple[Cocycle, PairProduct]:
    """``eta_psi(a, h) = psi(a)`` on the Zappa-Szép product, validated."""
    from .category import validate_cocycle

    witness = invariance_witness(system, psi)
    if witness is not None:
        raise NotInvariant("cocycle is not invariant under the group action", witness)
    product = product or zs_product(system)
    eta, _ = validate_cocycle(product.category, psi.target, lambda m: psi(product.pair_of(m)[0]))
    return eta, product


def exchange_isomorphism_check(system: CategorySystem, psi: Cocycle, group: FiniteGroup) -> CatFunctor:
    """Verify ``((a, h), g) -> ((a, g), h)`` from ``(C x|^phi H) x_eta G`` onto ``(C x_psi G) x|^phi~ H``.

    On ``C x_psi G`` the group ``H`` acts by ``h(a, g) = (h a, g)`` with cocycle
    ``phi~(h, (a, g)) = phi(h, a)``.
    """
    from .skew import skew_product

    eta, zs = promote_invariant_cocycle(system, psi)
    left = skew_product(zs.category, eta, group)
    inner = skew_product(system.category, psi, group)

    def lifted_act(h, m):
        a, g = inner.pair_of(m)
        return inner.id_of((system.act(h, a), g))

    def lifted_phi(h, m):
        return system.phi(h, inner.pair_of(m)[0])

    right = zs_product(CategorySystem(inner.category, system.group, lifted_act, lifted_phi))

    L, R = left.category, right.category
    mmap = {}
    for m in L.morphisms():
        ah, g = left.pair_of(m)
        a, h = zs.pair_of(ah)
        mmap[m] = right.id_of((inner.id_of((a, g)), h))
    vmap = {}
    for w in L.vertices:
        img = mmap[L.identity(w)]
        vmap[w] = R.vertex_of(img) if R.explicit else R.rng(img)
    f = CatFunctor(L, R, vmap, mmap)
    try:
        check_functor(f)
    except SkewcatError as exc:
        raise VerificationFailed(f"exchange map is not a functor: {exc}", exc.witness) from None
    if not is_isomorphism(f):
        raise VerificationFailed("exchange map is not bijective", None)
    return f


# --- Exel-Pardo systems ------------------------------------------------------------------

@dataclass
class ExelPardoSystem:
    """Graph ``E`` with ``H`` acting on vertices and edges and an edge cocycle ``phi``.

    Tables are keyed by element index: ``vertex_act[h][v]``, ``edge_act[h][e]``,
    ``phi[h][e]`` (an element index).
    """

    graph: Graph
    group: FiniteGroup
    vertex_act: dict
    edge_act: dict
    phi: dict
    budget: int = 3

    def path_category(self) -> PathCategory:
        return PathCategory(self.graph, self.budget)

    def act_path(self, h, path):
        if not isinstance(path, tuple):
            return self.vertex_act[h][path]
        out = []
        for e in path:
            out.append(self.edge_act[h][e])
            h = self.phi[h][e]
        return tuple(out)

    def phi_path(self, h, path):
        if isinstance(path, tuple):
            for e in path:
                h = self.phi[h][e]
        return h

    def category_system(self) -> CategorySystem:
        return CategorySystem(self.path_category(), self.group, self.act_path, self.phi_path)


def _index_table(group: FiniteGroup, table, value_is_element=False) -> dict:
    out = {}
    for h, row in table.items():
        hi = group.element(h)
        out[hi] = {k: (group.element(v) if value_is_element else v) for k, v in row.items()}
    return out


def build_exel_pardo(graph: Graph, group: FiniteGroup, vertex_act, edge_act, phi, budget: int = 3) -> ExelPardoSystem:
    """Validate the graph action and return the system.

    Missing ``vertex_act`` means ``H`` fixes every vertex.
    """
    if vertex_act is None:
        vertex_act = {h: {v: v for v in graph.vertices} for h in group.elements}
    va = _index_table(group, vertex_act)
    ea = _index_table(group, edge_act)
    ph = _index_table(group, phi, value_is_element=True)
    for tbl, keys, what in ((va, graph.vertices, "vertex"), (ea, graph.edges, "edge"), (ph, graph.edges, "cocycle")):
        if set(tbl) != set(group.elements):
            raise ValidationError(f"{what} table must cover every group element", None)
        for h, row in tbl.items():
            if set(row) != set(keys):
                raise ValidationError(f"{what} table row {group.name_of(h)} has the wrong domain", group.name_of(h))
    for h in group.elements:
        if sorted(va[h].values()) != sorted(graph.vertices) or sorted(ea[h].values()) != sorted(graph.edges):
            raise NotAction("not a permutation", group.name_of(h))
        for e in graph.edges:
            f = ea[h][e]
            if graph.rng[f] != va[h][graph.rng[e]] or graph.src[f] != va[h][graph.src[e]]:
                raise NotAction("edge action does not commute with range and source", (group.name_of(h), e))
    for g in group.elements:
        for h in group.elements:
            gh = group.mul(g, h)
            for v in graph.vertices:
                if va[g][va[h][v]] != va[gh][v]:
                    raise NotAction("vertex action is not an action", (group.name_of(g), group.name_of(h), v))
            for e in graph.edges:
                if ea[g][ea[h][e]] != ea[gh][e]:
                    raise NotAction("edge action is not an action", (group.name_of(g), group.name_of(h), e))
    return ExelPardoSystem(graph, group, va, ea, ph, budget)


def path_cocycle(paths: PathCategory, target, f: Mapping) -> Cocycle:
    """``psi_f(e1...en) = f(e1)...f(en)``; vertices go to the unit."""

    def value(m):
        if not isinstance(m, tuple):
            return target.unit
        return target.prod(f[e] for e in m)

    return Cocycle(paths, target, value)


def orbit_constant(ep: ExelPardoSystem, f: Mapping):
    """``None`` if ``f`` is constant on edge orbits, else a witness ``(h, e)``."""
    for e in ep.graph.edges:
        for h in ep.group.elements:
            if f[ep.edge_act[h][e]] != f[e]:
                return (ep.group.name_of(h), e)
    return None


def two_loop_swap(budget: int = 3) -> ExelPardoSystem:
    """One vertex, loops ``a`` and ``b``; ``Z2`` swaps them with ``phi(h, e) = h``."""
    from .groups import cyclic
    from .paths import two_loops

    g = two_loops()
    z2 = cyclic(2)
    swap = {"0": {"a": "a", "b": "b"}, "1": {"a": "b", "b": "a"}}
    phi = {h: {"a": h, "b": h} for h in ("0", "1")}
    return build_exel_pardo(g, z2, None, swap, phi, budget)


# --- Katsura data -------------------------------------------------------------------

def katsura_rule(m: int, a: int, b: int, k: int) -> tuple[int, int]:
    """Division with remainder: ``m b + k = q a + l`` with ``0 <= l < a``; returns ``(l, q)``.

    This rule comes from the literature on Katsura algebras, not from the
    category-level theory implemented here.
    """
    q, l = divmod(m * b + k, a)
    return l, q


def katsura_edge(i: int, j: int, k: int) -> str:
    return f"e{i}.{j}.{k}"


def katsura_system(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], modulus: int, budget: int = 3, rule=katsura_rule) -> ExelPardoSystem:
    """The Exel-Pardo system of ``(A, B)`` with ``Z`` replaced by ``Z_modulus``.

    Edges ``e{i}.{j}.{k}`` (``k < A[i][j]``) run from vertex ``v{j}`` to ``v{i}``;
    the group fixes vertices.  The reduction mod ``modulus`` is a surrogate and
    is only a valid system when the rule descends to the quotient, which the
    Zappa-Szép category check decides.
    """
    from .groups import cyclic

    n = len(A)
    if any(len(row) != n for row in A) or len(B) != n or any(len(row) != n for row in B):
        raise ShapeMismatch("A and B must be square matrices of the same shape", (n, [len(r) for r in A], [len(r) for r in B]))
    for x in (v for row in A for v in row):
        if x < 0:
            raise ValidationError("A must have nonnegative entries", x)
    for j in range(n):
        if all(A[i][j] == 0 for i in range(n)):
            raise ZeroColumn(f"column {j} of A is zero", j)
    if modulus < 1:
        raise ValidationError("modulus must be positive", modulus)
    verts = [f"v{i}" for i in range(n)]
    edges = {}
    for i in range(n):
        for j in range(n):
            for k in range(A[i][j]):
                edges[katsura_edge(i, j, k)] = (f"v{j}", f"v{i}")
    graph = Graph.build(verts, edges)
    group = cyclic(modulus)
    edge_act, phi = {}, {}
    for m in group.elements:
        edge_act[m], phi[m] = {}, {}
        for i in range(n):
            for j in range(n):
                for k in range(A[i][j]):
                    l, q = rule(m, A[i][j], B[i][j], k)
                    e = katsura_edge(i, j, k)
                    edge_act[m][e] = katsura_edge(i, j, l)
                    phi[m][e] = q % modulus
    return build_exel_pardo(graph, group, None, edge_act, phi, budget)


def explicit_table_system(cat: Category, group: FiniteGroup, act: Mapping, phi: Mapping) -> CategorySystem:
    """Build a system from name-keyed tables ``act[h][m]`` and ``phi[h][m]``."""
    a = _index_table(group, act)
    p = _index_table(group, phi, value_is_element=True)
    return CategorySystem(cat, group, a, p)
