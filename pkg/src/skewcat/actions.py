"""Group actions on explicit categories, quotients, and Gross-Tucker reconstruction."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import mutation
from .alignment import principal_ideal
from .category import (
    Category,
    CatFunctor,
    Cocycle,
    check_functor,
    is_isomorphism,
    validate_category,
    validate_cocycle,
)
from .errors import BudgetedUnsupported, NotAction, NotAutomorphism, NotFree, VerificationFailed
from .groups import FiniteGroup


@dataclass
class GroupAction:
    """``act[g][m]`` is ``g . m``; elements of ``group`` are table indices."""

    group: FiniteGroup
    category: Category
    act: dict

    def __call__(self, g, m):
        return self.act[g][m]

    def on_vertex(self, g, v):
        c = self.category
        return c.vertex_of(self.act[g][c.identity(v)])

    def orbit(self, m) -> frozenset:
        return frozenset(self.act[g][m] for g in self.group.elements)

    def orbits(self) -> list[frozenset]:
        seen, out = set(), []
        for m in self.category.morphisms():
            if m not in seen:
                o = self.orbit(m)
                seen |= o
                out.append(o)
        return out

    def freeness_witness(self):
        if mutation.enabled("no-freeness"):
            return None
        for g in self.group.elements:
            if g == self.group.unit:
                continue
            for m in self.category.morphisms():
                if self.act[g][m] == m:
                    return (self.group.name_of(g), m)
        return None

    def is_free(self) -> bool:
        return self.freeness_witness() is None


def validate_action(group: FiniteGroup, cat: Category, act) -> GroupAction:
    """Check that ``act`` is an action by category automorphisms.

    ``act`` maps element (index or name) -> {morphism: morphism}.
    """
    if not isinstance(group, FiniteGroup):
        raise BudgetedUnsupported("actions and quotients need a finite group", repr(group))
    table = {}
    for g, perm in act.items():
        table[group.element(g)] = dict(perm)
    if set(table) != set(group.elements):
        raise NotAction("action table must cover every group element", sorted(set(group.elements) - set(table)))
    ms = cat.morphisms()
    for g, perm in table.items():
        if set(perm) != set(ms) or set(perm.values()) != set(ms):
            raise NotAutomorphism(f"{group.name_of(g)} does not permute the morphisms", group.name_of(g))
        vmap = {}
        for v in cat.vertices:
            img = perm[cat.identity(v)]
            if not cat.is_identity(img):
                raise NotAutomorphism("identity sent to a non-identity", (group.name_of(g), v))
            vmap[v] = cat.vertex_of(img)
        f = CatFunctor(cat, cat, vmap, perm)
        try:
            check_functor(f)
        except Exception as exc:
            raise NotAutomorphism(f"{group.name_of(g)} is not a functor: {exc}", (group.name_of(g), getattr(exc, "witness", None))) from None
    e = group.unit
    for m in ms:
        if table[e][m] != m:
            raise NotAction("unit does not act trivially", m)
    for g in group.elements:
        for h in group.elements:
            gh = group.mul(g, h)
            for m in ms:
                if table[g][table[h][m]] != table[gh][m]:
                    raise NotAction("g.(h.m) != (gh).m", (group.name_of(g), group.name_of(h), m))
    return GroupAction(group, cat, table)


def validate_free_action(group, cat, act) -> tuple[GroupAction, bool, tuple | None]:
    action = validate_action(group, cat, act)
    witness = action.freeness_witness()
    return action, witness is None, witness


@dataclass
class QuotientResult:
    quotient: Category
    qmap: CatFunctor
    section: dict
    action: GroupAction
    orbit_of: dict = field(repr=False)


def quotient_category(action: GroupAction) -> QuotientResult:
    """``D/G`` with ``[l][m] = [l (g . m)]`` where ``s(l) = g . r(m)``."""
    witness = action.freeness_witness()
    if witness is not None:
        raise NotFree("action is not free", witness)
    D, G = action.category, action.group
    label = {}
    for orb in action.orbits():
        name = f"[{min(orb)}]"
        for m in orb:
            label[m] = name
    reps = {}
    for m in D.morphisms():
        reps.setdefault(label[m], min(action.orbit(m)))
    vlabel = {}
    section = {}
    for v in D.vertices:
        orb = {action.on_vertex(g, v) for g in G.elements}
        vrep = min(orb)
        vlabel[v] = f"[{vrep}]"
        section[vlabel[v]] = vrep

    def lift_factor(lam, mu):
        # the unique g with s(lam) = g . r(mu)
        target = D.src(lam)
        for g in G.elements:
            if action.on_vertex(g, D.rng(mu)) == target:
                return g
        return None

    qverts = list(dict.fromkeys(vlabel[v] for v in D.vertices))
    qmorph = [{"id": name, "src": vlabel[D.src(rep)], "rng": vlabel[D.rng(rep)]} for name, rep in reps.items()]
    compose = []
    for a, lam in reps.items():
        for b, mu in reps.items():
            if vlabel[D.src(lam)] != vlabel[D.rng(mu)]:
                continue
            g = lift_factor(lam, mu)
            compose.append((a, b, label[D.compose(lam, action(g, mu))]))
    identities = {vlabel[v]: label[D.identity(v)] for v in D.vertices}
    quotient = validate_category(qverts, qmorph, compose, identities)
    qmap = CatFunctor(D, quotient, dict(vlabel), dict(label))
    check_functor(qmap)
    return QuotientResult(quotient, qmap, section, action, label)


def quotient_ideal_intersection(qr: QuotientResult, lam, mu) -> frozenset:
    """Both sides of the quotient ideal-intersection identity; raises if they differ.

    Left: ``[l](D/G) & [m](D/G)``.  Right: union over ``t`` of ``q(lD & (t.m)D)``.
    """
    Q, D, act = qr.quotient, qr.action.category, qr.action
    q = qr.orbit_of
    left = principal_ideal(Q, q[lam]) & principal_ideal(Q, q[mu])
    right = set()
    mask_l = D.ideal_mask(lam)
    for t in act.group.elements:
        right.update(q[x] for x in D.from_mask(mask_l & D.ideal_mask(act(t, mu))))
    if left != right:
        raise VerificationFailed("quotient ideal intersection identity fails", (lam, mu))
    return frozenset(left)


@dataclass
class GrossTucker:
    quotient: QuotientResult
    cocycle: Cocycle
    skew: object  # SkewProduct of the quotient by the cocycle
    rho: CatFunctor  # skew product -> D
    lifts: dict  # quotient morphism -> lambda_alpha


def gross_tucker(action: GroupAction, section: dict | None = None, verify: bool = True) -> GrossTucker:
    """Recover a cocycle ``eta`` on ``D/G`` and an equivariant iso ``(D/G) x_eta G -> D``.

    ``lambda_a`` is the lift of ``a`` with range ``v_{r(a)}``; ``eta(a)`` is the
    unique element with ``s(lambda_a) = eta(a) . v_{s(a)}``; and
    ``rho(a, g) = (eta(a) g)^-1 . lambda_a``.
    """
    from .skew import skew_group_action, skew_product

    qr = quotient_category(action)
    D, G, Q = action.category, action.group, qr.quotient
    sec = dict(qr.section)
    if section:
        sec.update(section)
    for w, v in sec.items():
        if qr.qmap.vmap[v] != w:
            raise ValueError(f"section vertex {v!r} is not over {w!r}")

    def element_moving(v, target):
        for g in G.elements:
            if action.on_vertex(g, v) == target:
                return g
        raise VerificationFailed("vertex orbits are inconsistent", (v, target))

    lifts, eta_values = {}, {}
    for lam in D.morphisms():
        a = qr.orbit_of[lam]
        if a in lifts:
            continue
        g = element_moving(D.rng(lam), sec[Q.rng(a)])
        lifts[a] = action(g, lam)
    for a, lam_a in lifts.items():
        eta_values[a] = element_moving(sec[Q.src(a)], D.src(lam_a))
    eta, _ = validate_cocycle(Q, G, eta_values)
    sp = skew_product(Q, eta, G)
    rho_m = {}
    for m in sp.category.morphisms():
        a, g = sp.pair_of(m)
        rho_m[m] = action(G.inv(G.mul(eta(a), g)), lifts[a])
    rho_v = {w: D.vertex_of(rho_m[sp.category.identity(w)]) for w in sp.category.vertices}
    rho = CatFunctor(sp.category, D, rho_v, rho_m)
    if verify:
        if not is_isomorphism(rho):
            raise VerificationFailed("rho is not an isomorphism", None)
        canon = skew_group_action(sp)
        for k in G.elements:
            for m in sp.category.morphisms():
                if rho_m[canon(k, m)] != action(k, rho_m[m]):
                    raise VerificationFailed("rho is not equivariant", (G.name_of(k), m))
    return GrossTucker(qr, eta, sp, rho, lifts)


def skew_quotient_iso(sp) -> CatFunctor:
    """The map ``[(b, h)] -> b`` from ``(C x_eta G)/G`` to ``C``, verified."""
    from .skew import skew_group_action

    qr = quotient_category(skew_group_action(sp))
    Q = qr.quotient
    mmap = {}
    for m in sp.category.morphisms():
        b, _ = sp.pair_of(m)
        cls = qr.orbit_of[m]
        if mmap.setdefault(cls, b) != b:
            raise VerificationFailed("[(b, h)] -> b is not well defined", m)
    vmap = {w: sp.base.vertex_of(mmap[Q.identity(w)]) for w in Q.vertices}
    f = CatFunctor(Q, sp.base, vmap, mmap)
    if not is_isomorphism(f):
        raise VerificationFailed("(C x G)/G is not isomorphic to C via [(b, h)] -> b", None)
    return f
