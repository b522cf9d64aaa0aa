"""Finite groupoids, maximal trees, fundamental and universal groups, connectedness criteria."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from . import mutation
from .category import (
    Category,
    Cocycle,
    connected_components,
    inverse_of,
    is_connected,
    validate_cocycle,
)
from .errors import (
    BudgetedUnsupported,
    Degenerate,
    NotConnected,
    NotConnectedBase,
    NotGroupoid,
    SearchBudgetExceeded,
    VerificationFailed,
)
from .fpgroups import FpGroup, free_product, simplify
from .groups import FiniteGroup, reduce_word
from .paths import PathCategory

MAX_TREE_VERTICES = 8


# --- groupoids -----------------------------------------------------------------------

@dataclass
class Groupoid:
    category: Category
    inv: dict

    @property
    def vertices(self):
        return self.category.vertices


def as_groupoid(cat: Category) -> Groupoid:
    inv = {}
    for m in cat.morphisms():
        d = inverse_of(cat, m)
        if d is None:
            raise NotGroupoid(f"{m!r} has no inverse", m)
        inv[m] = d
    return Groupoid(cat, inv)


def _groupoid(g) -> Groupoid:
    return g if isinstance(g, Groupoid) else as_groupoid(g)


def isotropy_group(cat: Category, x) -> tuple[FiniteGroup, dict]:
    """Loops at ``x`` as a :class:`FiniteGroup` (names are morphism ids) and the id -> index map."""
    loops = list(cat.hom(x, x))
    index = {m: i for i, m in enumerate(loops)}
    table = tuple(tuple(index[cat.compose(a, b)] for b in loops) for a in loops)
    return FiniteGroup(tuple(loops), table, f"iso({x})"), index


@dataclass
class MaximalTree:
    root: object
    t: dict  # vertex y -> morphism x -> y


def maximal_tree(g, x) -> MaximalTree:
    """The tree choosing the least-id morphism ``x -> y`` for each ``y``."""
    G = _groupoid(g)
    cat = G.category
    if not is_connected(cat):
        raise NotConnected("groupoid is not connected", [sorted(b) for b in connected_components(cat)])
    t = {}
    for y in cat.vertices:
        t[y] = cat.identity(x) if y == x else min(cat.hom(y, x))
    return MaximalTree(x, t)


def retraction_from_tree(g, tree: MaximalTree) -> Cocycle:
    """``eta(a) = t_z^-1 a t_y`` for ``a: y -> z``, valued in the isotropy group at the root."""
    G = _groupoid(g)
    cat = G.category
    iso, index = isotropy_group(cat, tree.root)
    values = {}
    for m in cat.morphisms():
        z, y = cat.rng(m), cat.src(m)
        loop = cat.compose(G.inv[tree.t[z]], cat.compose(m, tree.t[y]))
        values[m] = index[loop]
    eta, _ = validate_cocycle(cat, iso, values)
    return eta


def tree_from_retraction(g, eta: Cocycle, x) -> MaximalTree:
    """``t_y = a eta(a)^-1`` for any ``a: x -> y``."""
    G = _groupoid(g)
    cat = G.category
    loops = eta.target.names
    t = {}
    for y in cat.vertices:
        a = min(cat.hom(y, x))
        t[y] = cat.compose(a, G.inv[loops[eta(a)]])
    return MaximalTree(x, t)


def decomposition_check(g, tree: MaximalTree) -> dict:
    """Verify ``theta(a) = ((z, y), t_z^-1 a t_y)`` is an isomorphism onto ``pair x iso``."""
    G = _groupoid(g)
    cat = G.category
    theta = {}
    for m in cat.morphisms():
        z, y = cat.rng(m), cat.src(m)
        theta[m] = ((z, y), cat.compose(G.inv[tree.t[z]], cat.compose(m, tree.t[y])))
    n = len(cat.vertices)
    iso = cat.hom(tree.root, tree.root)
    if len(set(theta.values())) != len(theta) or len(theta) != n * n * len(iso):
        raise VerificationFailed("theta is not a bijection", None)
    for a, b in cat.composable_pairs():
        (z, y), k = theta[a]
        (_, w), l = theta[b]
        if theta[cat.compose(a, b)] != ((z, w), cat.compose(k, l)):
            raise VerificationFailed("theta is not multiplicative", (a, b))
    return theta


# --- fundamental group -------------------------------------------------------------------

@dataclass
class FundamentalGroup:
    presentation: FpGroup  # simplified
    root: object
    generator_of: dict  # non-identity morphism -> generator name (before simplification)
    tree_edges: frozenset
    raw: FpGroup

    def loop_word(self, m):
        """The word for the loop ``t_z^-1 m t_y`` in the simplified presentation."""
        if m not in self.generator_of:
            return ()
        return self.presentation.resolve(((self.generator_of[m], 1),))

    def generator_morphism(self, gen):
        for m, g in self.generator_of.items():
            if g == gen:
                return m
        raise KeyError(gen)


def _spanning_tree(vertices, edges, root) -> set:
    """BFS spanning tree of the underlying undirected multigraph; ``edges``: (m, src, rng)."""
    adj = {v: [] for v in vertices}
    for m, s, r in edges:
        adj[s].append((m, r))
        adj[r].append((m, s))
    seen = {root}
    tree = set()
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for m, w in adj[v]:
            if w not in seen:
                seen.add(w)
                tree.add(m)
                queue.append(w)
    return tree


def _generating_data(cat):
    """(generators, composition relations) of the category presentation."""
    if getattr(cat, "explicit", True):
        gens = [m for m in cat.morphisms() if not cat.is_identity(m)]
        rels = [(a, b, c) for (a, b), c in cat.table.items()]
        return gens, rels
    if isinstance(cat, PathCategory):
        return [(e,) for e in cat.graph.edges], []
    raise BudgetedUnsupported("fundamental groups of graded views need a path category")


def fundamental_group(cat, x=None) -> FundamentalGroup:
    """Presentation of the vertex group at ``x`` of the enveloping groupoid.

    One generator per generating morphism, a relator ``g_a g_b g_ab^-1`` per
    composition, identities trivial; generators on a spanning tree of the
    underlying graph are set to 1 and the result Tietze-simplified.
    """
    if not is_connected(cat):
        raise NotConnected("category is not connected", [sorted(map(str, b)) for b in connected_components(cat)])
    x = x if x is not None else min(cat.vertices, key=str)
    gens, rels = _generating_data(cat)
    name = {m: f"g{i}" for i, m in enumerate(gens)}
    tree = _spanning_tree(cat.vertices, [(m, cat.src(m), cat.rng(m)) for m in gens], x)

    def letter(m, e=1):
        if m not in name or m in tree:
            return []
        return [(name[m], e)]

    relators = []
    for a, b, c in rels:
        relators.append(reduce_word(letter(a) + letter(b) + letter(c, -1)))
    raw = FpGroup([name[m] for m in gens if m not in tree], relators)
    return FundamentalGroup(simplify(raw), x, {m: name[m] for m in gens if m not in tree}, frozenset(tree), raw)


def tree_values(cat, eta: Cocycle, fg: FundamentalGroup) -> dict:
    """``tau_y``: the cocycle evaluated along the tree path from the root to ``y``."""
    G = eta.target
    tau = {fg.root: G.unit}
    pending = list(fg.tree_edges)
    while pending:
        rest = []
        for m in pending:
            s, r = cat.src(m), cat.rng(m)
            if s in tau and r not in tau:
                tau[r] = G.mul(eta(m), tau[s])
            elif r in tau and s not in tau:
                tau[s] = G.mul(G.inv(eta(m)), tau[r])
            elif s not in tau and r not in tau:
                rest.append(m)
        if len(rest) == len(pending):
            break
        pending = rest
    return tau


def pi_image(cat, eta: Cocycle, fg: FundamentalGroup | None = None) -> frozenset:
    """The subgroup ``psi(pi(C, x))`` generated by the images of the presentation's generators."""
    fg = fg or fundamental_group(cat)
    G = eta.target
    tau = tree_values(cat, eta, fg)
    images = []
    for gen in fg.presentation.generators:
        m = fg.generator_morphism(gen)
        z, y = cat.rng(m), cat.src(m)
        images.append(G.mul(G.mul(G.inv(tau[z]), eta(m)), tau[y]))
    return G.closure(images)


# --- universal group ---------------------------------------------------------------

@dataclass
class UniversalGroup:
    presentation: FpGroup
    mode: str
    j: dict  # morphism -> word in the presentation
    raw: FpGroup | None = None
    images: dict = field(default_factory=dict)  # generator -> recipe for factorization

    def factor(self, psi: Cocycle) -> dict:
        """The homomorphism ``psi'`` on generators with ``psi' o j = psi``, verified."""
        G = psi.target
        values = {g: _evaluate_recipe(recipe, psi) for g, recipe in self.images.items()}

        def ev(word):
            acc = G.unit
            for x, e in word:
                v = values[x]
                acc = G.mul(acc, v if e == 1 else G.inv(v))
            return acc

        for r in self.presentation.relators:
            if ev(r) != G.unit:
                raise VerificationFailed("induced map does not kill a relator", r)
        for m, w in self.j.items():
            if ev(w) != psi(m):
                raise VerificationFailed("psi' o j differs from psi", m)
        return values


def _evaluate_recipe(recipe, psi):
    G = psi.target
    acc = G.unit
    for m, e in recipe:
        v = psi(m)
        acc = G.mul(acc, v if e == 1 else G.inv(v))
    return acc


def _raw_universal(cat) -> UniversalGroup:
    gens, rels = _generating_data(cat)
    if getattr(cat, "explicit", True):
        gens = list(cat.morphisms())
    name = {m: f"u{i}" for i, m in enumerate(gens)}
    relators = [reduce_word([(name[a], 1), (name[b], 1), (name[c], -1)]) for a, b, c in rels]
    raw = FpGroup([name[m] for m in gens], relators)
    simple = simplify(raw)
    j = {}
    for m in cat.morphisms():
        if m in name:
            j[m] = simple.resolve(((name[m], 1),))
        elif isinstance(m, tuple):
            j[m] = simple.resolve(tuple((name[(e,)], 1) for e in m))
        else:
            j[m] = ()
    recipes = {}
    for g in simple.generators:
        m = next(k for k, v in name.items() if v == g)
        recipes[g] = [(m, 1)] if not isinstance(m, tuple) or len(m) == 1 else [((e,), 1) for e in m]
    return UniversalGroup(simple, "raw", j, raw, recipes)


def _tree_path_recipe(cat, fg: FundamentalGroup, y) -> list:
    """Word of (morphism, +-1) along the tree from the root to ``y`` (as a groupoid element)."""
    parent = {fg.root: None}
    queue = deque([fg.root])
    while queue:
        v = queue.popleft()
        for m in fg.tree_edges:
            s, r = cat.src(m), cat.rng(m)
            if s == v and r not in parent:
                parent[r] = (m, 1, v)
                queue.append(r)
            elif r == v and s not in parent:
                parent[s] = (m, -1, v)
                queue.append(s)
    out = []
    while parent[y] is not None:
        m, e, prev = parent[y]
        out.append((m, e))
        y = prev
    return out  # leftmost factor is applied last: t_y = m_1^{e_1} ... m_k^{e_k}


def _connected_universal(cat, x=None, prefix="") -> UniversalGroup:
    fg = fundamental_group(cat, x)
    x = fg.root
    others = [v for v in sorted(cat.vertices, key=str) if v != x]
    sname = {v: f"{prefix}s{i}" for i, v in enumerate(others)}
    pi = fg.presentation
    pren = {g: f"{prefix}{g}" for g in pi.generators}
    gens = [sname[v] for v in others] + [pren[g] for g in pi.generators]
    rels = [tuple((pren[g], e) for g, e in r) for r in pi.relators]
    pres = FpGroup(gens, rels)

    def vbar(v, e):
        return [] if v == x else [(sname[v], e)]

    j = {}
    for m in cat.morphisms():
        if cat.is_identity(m):
            j[m] = ()
            continue
        z, y = cat.rng(m), cat.src(m)
        pieces = [m] if cat.explicit else [(e,) for e in m]
        loop = [(pren[g], s) for p in pieces for g, s in fg.loop_word(p)]
        j[m] = reduce_word(vbar(z, 1) + loop + vbar(y, -1))
    recipes = {}
    for v in others:
        recipes[sname[v]] = _tree_path_recipe(cat, fg, v)
    for g in pi.generators:
        m = fg.generator_morphism(g)
        z, y = cat.rng(m), cat.src(m)
        tz, ty = _tree_path_recipe(cat, fg, z), _tree_path_recipe(cat, fg, y)
        inv_tz = [(k, -e) for k, e in reversed(tz)]
        recipes[pren[g]] = inv_tz + [(m, 1)] + ty
    return UniversalGroup(pres, "connected", j, None, recipes)


def universal_group(cat, mode: str = "raw") -> UniversalGroup:
    """``U(C)`` as a presentation with its canonical cocycle ``j``.

    ``raw``: one generator per morphism, one relator per composable pair.
    ``connected``: ``F(S) * pi(C, x)`` with ``S`` the vertices other than ``x``.
    ``components``: free product of the connected presentations of the components of a groupoid.
    """
    if mode == "raw":
        return _raw_universal(cat)
    if mode == "connected":
        if not is_connected(cat):
            raise NotConnected("connected mode needs a connected category", [sorted(map(str, b)) for b in connected_components(cat)])
        return _connected_universal(cat)
    if mode == "components":
        as_groupoid(cat)
        parts, js, recipes = [], {}, {}
        for i, block in enumerate(connected_components(cat)):
            sub = _full_subcategory(cat, block)
            ug = _connected_universal(sub, prefix=f"c{i}_")
            parts.append(ug.presentation)
            js.update(ug.j)
            recipes.update(ug.images)
        return UniversalGroup(free_product(*parts), "components", js, None, recipes)
    raise ValueError(f"unknown mode {mode!r}")


def _full_subcategory(cat: Category, block) -> Category:
    from .category import validate_category

    verts = [v for v in cat.vertices if v in block]
    ms = {m: (cat.src(m), cat.rng(m)) for m in cat.morphisms() if cat.src(m) in block}
    comp = [(a, b, c) for (a, b), c in cat.table.items() if a in ms]
    return validate_category(verts, ms, comp, {v: cat.identity(v) for v in verts})


# --- connectedness of skew products --------------------------------------------------------

def skew_connectivity_report(cat, eta: Cocycle) -> dict:
    """Compare union-find connectivity of the skew product with ``psi(pi(C, x)) == G``."""
    from .skew import skew_product

    if not is_connected(cat):
        raise NotConnectedBase("base category is not connected", [sorted(map(str, b)) for b in connected_components(cat)])
    G = eta.target
    sp = skew_product(cat, eta, G)
    direct = len(connected_components(sp.category)) == 1
    image = pi_image(cat, eta)
    via_pi = len(image) == G.order
    nondegenerate = eta.is_nondegenerate()
    report = {"direct": direct, "via_pi": via_pi, "nondegenerate": nondegenerate, "pi_image_order": len(image)}
    if nondegenerate and direct != via_pi:
        raise VerificationFailed("direct and pi-image connectivity verdicts disagree", report)
    return report


# --- the seven equivalent conditions -----------------------------------------------------------

def _image_of_isotropy(cat, psi, x) -> frozenset:
    return psi.target.closure(psi(m) for m in cat.hom(x, x))


def _kernel_tree_exists(cat, psi, x) -> bool:
    G = psi.target
    for y in cat.vertices:
        ok = any(mutation.enabled("tree-outside-kernel") or psi(t) == G.unit for t in cat.hom(y, x))
        if not ok:
            return False
    return True


def _factoring_tree_exists(cat, psi, x) -> bool:
    """Is there a tree ``t`` rooted at ``x`` with ``psi(a) = psi(t_z)^-1 psi(a) psi(t_y)`` for all ``a``?

    Only the values ``psi(t_y)`` matter, so the search runs over attainable values
    per vertex with pruning on already assigned pairs.
    """
    G = psi.target
    verts = [x] + [v for v in cat.vertices if v != x]
    options = {y: sorted({psi(t) for t in cat.hom(y, x)}) for y in verts}
    options[x] = [G.unit]
    value: dict = {}

    def consistent(y):
        for z in value:
            for a in cat.hom(z, y):
                if G.mul(G.mul(G.inv(value[z]), psi(a)), value[y]) != psi(a):
                    return False
            for a in cat.hom(y, z):
                if G.mul(G.mul(G.inv(value[y]), psi(a)), value[z]) != psi(a):
                    return False
        return True

    def rec(i):
        if i == len(verts):
            return True
        y = verts[i]
        for g in options[y]:
            value[y] = g
            if consistent(y) and rec(i + 1):
                return True
            del value[y]
        return False

    return rec(0)


def seven_criteria_check(g, psi: Cocycle) -> dict:
    """Evaluate the seven connectedness conditions independently and compare them."""
    from .skew import skew_product

    G = _groupoid(g)
    cat = G.category
    if not is_connected(cat):
        raise NotConnected("groupoid is not connected", [sorted(map(str, b)) for b in connected_components(cat)])
    if not psi.is_nondegenerate():
        raise Degenerate("cocycle image does not generate the group", sorted(psi.image()))
    if len(cat.vertices) > MAX_TREE_VERTICES:
        raise SearchBudgetExceeded(f"tree search is capped at {MAX_TREE_VERTICES} vertices", len(cat.vertices))
    H = psi.target
    sp = skew_product(cat, psi, H)
    c1 = len(connected_components(sp.category)) == 1
    full = [len(_image_of_isotropy(cat, psi, x)) == H.order for x in cat.vertices]
    kernel = [_kernel_tree_exists(cat, psi, x) for x in cat.vertices]
    factor = [_factoring_tree_exists(cat, psi, x) for x in cat.vertices]
    verdict = {
        "1_skew_connected": c1,
        "2_isotropy_onto_every": all(full),
        "3_isotropy_onto_some": any(full),
        "4_kernel_tree_every": all(kernel),
        "5_kernel_tree_some": any(kernel),
        "6_factors_every": all(factor),
        "7_factors_some": any(factor),
    }
    verdict["agree"] = len(set(verdict.values())) == 1
    return verdict
