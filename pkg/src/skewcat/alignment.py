"""Principal right ideals, joins, exhaustive and independent sets.

On explicit categories everything is computed from ideal bitmasks.  Path
categories use exact prefix arithmetic.  Other graded views are handled
inside their window, and the answer is certified only up to the budget.

Join outputs carry one representative per ~-class: the identity when the
class contains one, otherwise the least id (by ``str``).
"""

from __future__ import annotations

from typing import Iterable

from .category import Category, canonical_representatives
from .errors import BudgetedUnsupported, EmptyFamily, FNotAtVertex
from .paths import GradedView, PathCategory

IndependentSet = frozenset


def _rep_key(cat, m):
    return (not cat.is_identity(m), str(m))


def principal_ideal(cat, a) -> frozenset:
    """``aC`` (inside the window for graded views)."""
    if isinstance(cat, Category):
        return frozenset(cat.from_mask(cat.ideal_mask(a)))
    if not hasattr(cat, "degree"):
        raise BudgetedUnsupported("ideals need a grading")
    room = cat.budget - cat.degree(a)
    return frozenset(cat.compose(a, g) for g in cat.with_range(cat.src(a)) if cat.degree(g) <= room)


def divides(cat, d, m) -> bool:
    """Whether ``m`` lies in ``dC``."""
    if isinstance(cat, Category):
        return bool(cat.ideal_mask(d) & cat.bit[m])
    if isinstance(cat, PathCategory):
        return cat.is_prefix(d, m)
    if cat.rng(d) != cat.rng(m):
        return False
    gap = cat.degree(m) - cat.degree(d)
    if gap < 0:
        return False
    return any(cat.degree(g) == gap and cat.compose(d, g) == m for g in cat.with_range(cat.src(d)))


def _graded_invertibles(cat) -> set:
    zero = [m for m in cat.morphisms() if cat.degree(m) == 0]
    out = set()
    for g in zero:
        for d in zero:
            if (
                cat.src(d) == cat.rng(g)
                and cat.rng(d) == cat.src(g)
                and cat.compose(g, d) == cat.identity(cat.rng(g))
                and cat.compose(d, g) == cat.identity(cat.src(g))
            ):
                out.add(g)
                break
    return out


def _canonical(cat, elements) -> frozenset:
    """Replace each element by its ~-class representative."""
    if isinstance(cat, Category):
        reps = _reps_cache(cat)
        return frozenset(reps[m] for m in elements)
    if isinstance(cat, PathCategory):
        return frozenset(elements)
    inv = [u for u in _graded_invertibles(cat)]
    out = set()
    for m in elements:
        cls = [cat.compose(m, u) for u in inv if cat.rng(u) == cat.src(m)]
        out.add(min(cls, key=lambda x: _rep_key(cat, x)))
    return frozenset(out)


def _reps_cache(cat: Category) -> dict:
    reps = cat.__dict__.get("_join_reps")
    if reps is None:
        by_rep: dict = {}
        for m, rep in canonical_representatives(cat).items():
            by_rep.setdefault(rep, []).append(m)
        reps = {}
        for members in by_rep.values():
            best = min(members, key=lambda x: _rep_key(cat, x))
            for m in members:
                reps[m] = best
        cat.__dict__["_join_reps"] = reps
    return reps


def _minimal_generators_explicit(cat: Category, mask: int) -> frozenset:
    elems = cat.from_mask(mask)
    ideals = {}
    for m in elems:
        ideals.setdefault(cat.ideal_mask(m), []).append(m)
    masks = list(ideals)
    maximal = [
        mk for mk in masks if not any(other != mk and (mk & ~other) == 0 for other in masks)
    ]
    return frozenset(min(ideals[mk], key=lambda x: _rep_key(cat, x)) for mk in maximal)


def _join_paths(cat: PathCategory, items) -> frozenset:
    items = list(items)
    longest = max(items, key=cat.degree)
    if all(cat.is_prefix(a, longest) for a in items):
        return frozenset([longest])
    return frozenset()


def _join_window(cat: GradedView, items) -> frozenset:
    items = list(items)
    r = cat.rng(items[0])
    if any(cat.rng(a) != r for a in items):
        return frozenset()
    inter = [m for m in cat.with_range(r) if all(divides(cat, a, m) for a in items)]
    gens = []
    for m in inter:
        if not any(divides(cat, d, m) and not divides(cat, m, d) for d in inter if d != m):
            gens.append(m)
    # mutually dividing generators are ~-equivalent; keep one per class
    chosen: list = []
    for m in sorted(gens, key=lambda x: _rep_key(cat, x)):
        if not any(divides(cat, c, m) and divides(cat, m, c) for c in chosen):
            chosen.append(m)
    return _canonical(cat, chosen)


def join_family(cat, family: Iterable) -> frozenset:
    """An independent set ``L`` with ``LC`` equal to the intersection of ``aC``, a in F."""
    family = list(family)
    if not family:
        raise EmptyFamily("join over an empty family is not defined")
    if isinstance(cat, Category):
        mask = -1
        for a in family:
            mask &= cat.ideal_mask(a)
        return _minimal_generators_explicit(cat, mask) if mask else frozenset()
    if isinstance(cat, PathCategory):
        return _join_paths(cat, family)
    if isinstance(cat, GradedView):
        return _join_window(cat, family)
    raise BudgetedUnsupported("joins need an explicit table or a graded view")


def join(cat, a, b) -> frozenset:
    """``a v b`` as canonical representatives; empty when ``aC`` and ``bC`` are disjoint."""
    return join_family(cat, [a, b])


def ideal_union(cat, elements) -> frozenset:
    out: set = set()
    for g in elements:
        out |= principal_ideal(cat, g)
    return frozenset(out)


def is_independent(cat, family) -> tuple[bool, tuple | None]:
    family = list(family)
    for a in family:
        for b in family:
            if a != b and divides(cat, b, a):
                return False, (a, b)
    return True, None


def _meets(cat, a, b) -> bool:
    if isinstance(cat, Category):
        return bool(cat.ideal_mask(a) & cat.ideal_mask(b))
    if isinstance(cat, PathCategory):
        return cat.is_prefix(a, b) or cat.is_prefix(b, a)
    return bool(join(cat, a, b))


def is_exhaustive(cat, v, family) -> tuple[bool, object | None]:
    """Whether every ``a`` in ``vC`` meets some ``b`` in ``F``; witness otherwise."""
    family = list(family)
    for b in family:
        if cat.rng(b) != v:
            raise FNotAtVertex(f"{b!r} does not have range {v!r}", b)
    for a in sorted(cat.with_range(v), key=lambda x: (getattr(cat, "degree", lambda _: 0)(x), str(x))):
        if not any(_meets(cat, a, b) for b in family):
            return False, a
    return True, None
