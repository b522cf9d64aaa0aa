"""Named small categories and seeded random families used by tests and the suite runner.

Random families (all reproducible from a ``random.Random``):

* finite groupoids: disjoint unions of ``pair(n) x K`` for small groups ``K``;
* path categories of random DAGs (finite, explicit);
* DAG path categories modulo a random congruence generated by identifying
  parallel paths, kept only when left cancellative;
* direct products of DAG path categories with a small group;

each optionally relabelled with opaque ids.  Cocycles come from randomized
backtracking over the composition table.
"""

from __future__ import annotations

import random
from typing import Sequence

from networkx.utils import UnionFind

from .category import (
    Category,
    Cocycle,
    is_connected,
    is_left_cancellative,
    materialize,
    relabel,
    validate_category,
    validate_cocycle,
)
from .groups import FiniteGroup, cyclic, homomorphisms, small_groups
from .paths import Graph, PathCategory, label_path


# --- named fixtures ------------------------------------------------------------

def pair_groupoid() -> Category:
    """Objects ``x, y``; ``a: x -> y`` and ``ā: y -> x`` with ``aā = y``, ``āa = x``."""
    return validate_category(
        ["x", "y"],
        {"x": ("x", "x"), "y": ("y", "y"), "a": ("x", "y"), "ā": ("y", "x")},
        [
            ("x", "x", "x"), ("y", "y", "y"),
            ("a", "x", "a"), ("y", "a", "a"),
            ("ā", "y", "ā"), ("x", "ā", "ā"),
            ("a", "ā", "y"), ("ā", "a", "x"),
        ],
    )


def pair_groupoid_spec() -> dict:
    return pair_groupoid().to_spec()


def arrow() -> Category:
    """``e: v -> u``."""
    return validate_category(
        ["u", "v"],
        {"u": ("u", "u"), "v": ("v", "v"), "e": ("v", "u")},
        [("u", "u", "u"), ("v", "v", "v"), ("e", "v", "e"), ("u", "e", "e")],
    )


def parallel_arrows() -> Category:
    """Two arrows ``e, f: v -> u``."""
    return validate_category(
        ["u", "v"],
        {"u": ("u", "u"), "v": ("v", "v"), "e": ("v", "u"), "f": ("v", "u")},
        [
            ("u", "u", "u"), ("v", "v", "v"),
            ("e", "v", "e"), ("u", "e", "e"), ("f", "v", "f"), ("u", "f", "f"),
        ],
    )


def idempotent_monoid() -> Category:
    """One object ``1`` with a second morphism ``z``, ``zz = z``."""
    return validate_category(
        ["1"],
        {"1": ("1", "1"), "z": ("1", "1")},
        [("1", "1", "1"), ("1", "z", "z"), ("z", "1", "z"), ("z", "z", "z")],
    )


def point() -> Category:
    return validate_category(["*"], {"*": ("*", "*")}, [("*", "*", "*")])


def group_category(group: FiniteGroup, vertex: str = "*") -> Category:
    """``group`` as a one-object category; morphism ids are element names."""
    n = group.names
    morphisms = {name: (vertex, vertex) for name in n}
    compose = [(n[a], n[b], n[group.mul(a, b)]) for a in group.elements for b in group.elements]
    return validate_category([vertex], morphisms, compose, {vertex: n[group.unit]})


def disjoint_union(*cats: Category) -> Category:
    vertices, morphisms, compose, identities = [], {}, [], {}
    for c in cats:
        vertices += list(c.vertices)
        for m in c.morphisms():
            morphisms[m] = (c.src(m), c.rng(m))
        compose += [(a, b, x) for (a, b), x in c.table.items()]
        identities.update(c.identities)
    return validate_category(vertices, morphisms, compose, identities)


def pair_group_groupoid(vertices: Sequence[str], group: FiniteGroup, tag: str = "") -> Category:
    """``(V x V) x K``: morphism ``z|y|k`` goes from ``y`` to ``z``."""
    vertices = [f"{tag}{v}" for v in vertices]

    def mid(z, y, k):
        return z if (z == y and k == group.unit) else f"{z}|{y}|{group.name_of(k)}"

    morphisms = {}
    for z in vertices:
        for y in vertices:
            for k in group.elements:
                morphisms[mid(z, y, k)] = (y, z)
    compose = []
    for z in vertices:
        for y in vertices:
            for w in vertices:
                for k in group.elements:
                    for l in group.elements:
                        compose.append((mid(z, y, k), mid(y, w, l), mid(z, w, group.mul(k, l))))
    return validate_category(vertices, morphisms, compose)


def one_loop_graph() -> Graph:
    from .paths import one_loop

    return one_loop()


def swap_action(cat: Category | None = None) -> dict:
    """The ``Z2`` swap ``x <-> y``, ``a <-> ā`` on the pair groupoid."""
    return {"0": {"x": "x", "y": "y", "a": "a", "ā": "ā"}, "1": {"x": "y", "y": "x", "a": "ā", "ā": "a"}}


# --- random categories ---------------------------------------------------------------

def random_dag(rng: random.Random, n_vertices: int, n_edges: int, connected: bool = True) -> Graph:
    verts = [f"v{i}" for i in range(n_vertices)]
    edges = {}
    k = 0
    if connected:
        for i in range(1, n_vertices):
            j = rng.randrange(i)
            lo, hi = sorted((i, j))
            edges[f"e{k}"] = (verts[hi], verts[lo])
            k += 1
    while k < n_edges and n_vertices > 1:
        i, j = rng.sample(range(n_vertices), 2)
        lo, hi = sorted((i, j))
        edges[f"e{k}"] = (verts[hi], verts[lo])
        k += 1
    return Graph.build(verts, edges)


def path_table(graph: Graph) -> Category:
    """Explicit path category of an acyclic graph."""
    view = PathCategory(graph, len(graph.vertices))
    cat, _ = materialize(view, label_path, check=False)
    return cat


def random_dag_category(rng: random.Random, max_morphisms: int = 40) -> Category:
    for _ in range(200):
        n = rng.randint(1, 5)
        graph = random_dag(rng, n, rng.randint(max(0, n - 1), n + 3), connected=rng.random() < 0.8)
        cat = path_table(graph)
        if len(cat) <= max_morphisms:
            return cat
    return path_table(random_dag(rng, 2, 1))


def congruence_quotient(cat: Category, pairs) -> Category:
    """Quotient by the smallest congruence identifying each given parallel pair."""
    uf = UnionFind(cat.morphisms())
    for a, b in pairs:
        uf.union(a, b)
    changed = True
    while changed:
        changed = False
        for m in cat.morphisms():
            for n in cat.hom(cat.rng(m), cat.src(m)):
                if uf[m] != uf[n]:
                    continue
                for x in cat.with_source(cat.rng(m)):
                    p, q = cat.compose(x, m), cat.compose(x, n)
                    if uf[p] != uf[q]:
                        uf.union(p, q)
                        changed = True
                for y in cat.with_range(cat.src(m)):
                    p, q = cat.compose(m, y), cat.compose(n, y)
                    if uf[p] != uf[q]:
                        uf.union(p, q)
                        changed = True
    rep = {}
    for block in uf.to_sets():
        r = min(block, key=lambda s: (len(s), s))
        for m in block:
            rep[m] = r
    reps = sorted(set(rep.values()), key=cat.morphisms().index)
    morphisms = {r: (cat.src(r), cat.rng(r)) for r in reps}
    compose = [(a, b, rep[cat.compose(a, b)]) for a in reps for b in reps if cat.src(a) == cat.rng(b)]
    return validate_category(list(cat.vertices), morphisms, compose, {v: rep[cat.identity(v)] for v in cat.vertices})


def random_quotient_category(rng: random.Random, max_morphisms: int = 40) -> Category:
    for _ in range(100):
        base = random_dag_category(rng, max_morphisms)
        parallel = [
            (a, b)
            for a in base.non_identities()
            for b in base.hom(base.rng(a), base.src(a))
            if a < b and not base.is_identity(b)
        ]
        if not parallel:
            continue
        chosen = rng.sample(parallel, rng.randint(1, min(2, len(parallel))))
        q = congruence_quotient(base, chosen)
        if is_left_cancellative(q)[0]:
            return q
    return random_dag_category(rng, max_morphisms)


def product_with_group(cat: Category, group: FiniteGroup) -> Category:
    """``C x K`` with morphism ids ``m^k``; vertices unchanged."""

    def mid(m, k):
        return m if (cat.is_identity(m) and k == group.unit) else f"{m}^{group.name_of(k)}"

    morphisms = {mid(m, k): (cat.src(m), cat.rng(m)) for m in cat.morphisms() for k in group.elements}
    compose = [
        (mid(a, k), mid(b, l), mid(c, group.mul(k, l)))
        for (a, b), c in cat.table.items()
        for k in group.elements
        for l in group.elements
    ]
    return validate_category(list(cat.vertices), morphisms, compose, {v: cat.identity(v) for v in cat.vertices})


def random_groupoid(rng: random.Random, max_vertices: int = 4, max_isotropy: int = 6, components: int | None = None) -> Category:
    groups = [g for g in small_groups(max_isotropy)]
    ncomp = components if components is not None else rng.randint(1, 2)
    parts = []
    for c in range(ncomp):
        n = rng.randint(1, max_vertices)
        k = rng.choice(groups)
        parts.append(pair_group_groupoid([f"{c}{i}" for i in range(n)], k, tag="w"))
    return disjoint_union(*parts) if len(parts) > 1 else parts[0]


def opaque(cat: Category, rng: random.Random) -> Category:
    """Rename every morphism and vertex to a shuffled opaque id."""
    ms = list(cat.morphisms())
    labels = [f"m{i}" for i in range(len(ms))]
    rng.shuffle(labels)
    mapping = dict(zip(ms, labels))
    vmapping = {v: f"o{mapping[cat.identity(v)][1:]}" for v in cat.vertices}
    return relabel(cat, mapping, vmapping)


def random_lc_category(rng: random.Random, max_morphisms: int = 40) -> Category:
    """One draw from the mixed family of left cancellative categories."""
    kind = rng.choice(["dag", "quotient", "product", "groupoid"])
    if kind == "dag":
        cat = random_dag_category(rng, max_morphisms)
    elif kind == "quotient":
        cat = random_quotient_category(rng, max_morphisms)
    elif kind == "product":
        k = rng.choice([g for g in small_groups(4) if g.order > 1])
        cat = product_with_group(random_dag_category(rng, max(1, max_morphisms // k.order)), k)
        if len(cat) > max_morphisms:
            cat = random_dag_category(rng, max_morphisms)
    else:
        cat = random_groupoid(rng, max_vertices=3, max_isotropy=4)
        if len(cat) > max_morphisms:
            cat = random_groupoid(rng, max_vertices=2, max_isotropy=2, components=1)
    return opaque(cat, rng) if rng.random() < 0.5 else cat


def random_connected_lc_category(rng: random.Random, max_morphisms: int = 40) -> Category:
    for _ in range(200):
        cat = random_lc_category(rng, max_morphisms)
        if is_connected(cat):
            return cat
    return pair_groupoid()


# --- random cocycles -------------------------------------------------------------------

def random_cocycle(cat: Category, group: FiniteGroup, rng: random.Random) -> Cocycle:
    """A uniformly-ish random functor into ``group`` by backtracking with propagation.

    Each composition triple ``(a, b, ab)`` ties three values; any two fix the third.
    """
    triples = [(a, b, c) for (a, b), c in cat.table.items()]
    touching: dict = {m: [] for m in cat.morphisms()}
    for t in triples:
        for m in set(t):
            touching[m].append(t)
    order = [m for m in cat.morphisms() if not cat.is_identity(m)]
    rng.shuffle(order)
    G = group

    def propagate(values, start):
        stack = [start]
        while stack:
            m = stack.pop()
            for a, b, c in touching[m]:
                va, vb, vc = values.get(a), values.get(b), values.get(c)
                known = (va is not None) + (vb is not None) + (vc is not None)
                if known == 3:
                    if G.mul(va, vb) != vc:
                        return False
                elif known == 2:
                    if va is None:
                        values[a] = G.mul(vc, G.inv(vb))
                        stack.append(a)
                    elif vb is None:
                        values[b] = G.mul(G.inv(va), vc)
                        stack.append(b)
                    else:
                        values[c] = G.mul(va, vb)
                        stack.append(c)
        return True

    def search(values, i):
        while i < len(order) and order[i] in values:
            i += 1
        if i == len(order):
            return values
        m = order[i]
        choices = list(G.elements)
        rng.shuffle(choices)
        for g in choices:
            trial = dict(values)
            trial[m] = g
            if propagate(trial, m):
                done = search(trial, i + 1)
                if done is not None:
                    return done
        return None

    start = {cat.identity(v): G.unit for v in cat.vertices}
    ok = all(propagate(start, cat.identity(v)) for v in cat.vertices)
    values = search(start, 0) if ok else None
    if values is None:  # unreachable: the trivial cocycle always exists
        values = {m: G.unit for m in cat.morphisms()}
    eta, _ = validate_cocycle(cat, G, values)
    return eta


def random_nondegenerate_cocycle(cat: Category, group: FiniteGroup, rng: random.Random, attempts: int = 30) -> Cocycle | None:
    for _ in range(attempts):
        eta = random_cocycle(cat, group, rng)
        if eta.is_nondegenerate():
            return eta
    return None


def random_groupoid_cocycle(cat: Category, group: FiniteGroup, rng: random.Random) -> Cocycle:
    """``psi(m) = c_z rho(t_z^-1 m t_y) c_y^-1`` for ``m: y -> z``.

    ``t`` is a fixed tree per component, ``rho`` a random homomorphism out of the
    isotropy at the root and ``c`` random; every cocycle on a finite groupoid
    has this shape.
    """
    from .category import connected_components, inverse_of

    values = {}
    for block in connected_components(cat):
        verts = sorted(block)
        x = verts[0]
        loops = list(cat.hom(x, x))
        index = {m: i for i, m in enumerate(loops)}
        table = tuple(tuple(index[cat.compose(a, b)] for b in loops) for a in loops)
        iso = FiniteGroup(tuple(loops), table)
        rho = rng.choice(homomorphisms(iso, group))
        tree = {v: cat.hom(v, x)[0] if v != x else cat.identity(x) for v in verts}
        tree_inv = {v: inverse_of(cat, t) for v, t in tree.items()}
        c = {v: (group.unit if v == x else rng.choice(list(group.elements))) for v in verts}
        for z in verts:
            for y in verts:
                for m in cat.hom(z, y):
                    loop = cat.compose(tree_inv[z], cat.compose(m, tree[y]))
                    values[m] = group.mul(group.mul(c[z], rho[index[loop]]), group.inv(c[y]))
    eta, _ = validate_cocycle(cat, group, values)
    return eta


def random_free_action(rng: random.Random, max_morphisms: int = 60, max_group: int = 6):
    """A free action presented as a relabelled skew product with its canonical action.

    Returns ``(category, group, act)`` with ``act[h][m]`` name-keyed.
    """
    from .skew import skew_group_action, skew_product

    groups = [g for g in small_groups(max_group)]
    for _ in range(200):
        g = rng.choice(groups)
        base = random_lc_category(rng, max(1, max_morphisms // g.order))
        if len(base) * g.order > max_morphisms:
            continue
        eta = random_cocycle(base, g, rng)
        sp = skew_product(base, eta, g)
        action = skew_group_action(sp)
        cat = sp.category
        ms = list(cat.morphisms())
        labels = [f"d{i}" for i in range(len(ms))]
        rng.shuffle(labels)
        mapping = dict(zip(ms, labels))
        vmapping = {v: f"p{mapping[cat.identity(v)][1:]}" for v in cat.vertices}
        d = relabel(cat, mapping, vmapping)
        act = {g.name_of(h): {mapping[m]: mapping[action(h, m)] for m in ms} for h in g.elements}
        return d, g, act
    return pair_groupoid(), cyclic(2), swap_action()


def dihedral_surrogate():
    """``pair{x, y} x Z4`` with ``psi(a) = t`` on the arrow ``a: x -> y`` and ``psi(k) = d``.

    Here ``k`` generates the isotropy and ``t, d`` are the reflection and rotation of
    the dihedral group of order 8.  Returns ``(groupoid, psi)``.
    """
    from .groups import dihedral

    z4, d4 = cyclic(4), dihedral(4)
    cat = pair_group_groupoid(["x", "y"], z4)
    d, t = d4.element("d"), d4.element("t")
    conj = {"x": d4.unit, "y": t}
    values = {}
    for m in cat.morphisms():
        if "|" in m:
            z, y, k = m.split("|")
            k = int(k)
        else:
            z = y = m
            k = 0
        rot = d4.prod([d] * k)
        values[m] = d4.mul(d4.mul(conj[z], rot), d4.inv(conj[y]))
    psi, _ = validate_cocycle(cat, d4, values)
    return cat, psi
