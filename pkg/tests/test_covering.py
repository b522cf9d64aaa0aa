import random

from hypothesis import given, strategies as st

from skewcat import fixtures as fx
from skewcat.actions import quotient_category, validate_action
from skewcat.category import CatFunctor, connected_components, inverse_of, is_connected, validate_cocycle
from skewcat.covering import (
    CocycleAction,
    deck_transformations,
    is_covering,
    is_transitive,
    orbits_and_stabilizers,
    skew_transformation_iso,
    stabilizers_conjugate,
    transformation_category,
    translations_embed,
)
from skewcat.groups import cyclic, small_groups, trivial
from skewcat.paths import PathCategory, one_loop
from skewcat.skew import right_translation, skew_product
from skewcat.zappa import path_cocycle

seeds = st.integers(min_value=0, max_value=10_000)
Z2 = cyclic(2)


def pair_skew(value):
    pg = fx.pair_groupoid()
    eta, _ = validate_cocycle(pg, Z2, {"x": 0, "y": 0, "a": value, "ā": value})
    return skew_product(pg, eta, Z2)


def test_skew_projection_is_a_covering():
    assert is_covering(pair_skew(1).projection) == (True, None)


def test_free_quotient_map_is_a_covering():
    pg = fx.pair_groupoid()
    qr = quotient_category(validate_action(Z2, pg, fx.swap_action()))
    assert is_covering(qr.qmap)[0]


def test_collapsing_an_arrow_is_not_a_covering():
    arrow, point = fx.arrow(), fx.point()
    p = CatFunctor(arrow, point, {"u": "*", "v": "*"}, {"u": "*", "v": "*", "e": "*"})
    ok, (vertex, reason) = is_covering(p)
    assert not ok and vertex == "u" and "not injective" in reason


def test_singleton_fibers_give_the_category_back():
    pg = fx.pair_groupoid()
    tc = transformation_category(pg, {v: ["*"] for v in pg.vertices}, lambda a, w: w)
    assert len(tc.category) == len(pg)


def test_swap_on_two_point_fibers():
    pg = fx.pair_groupoid()
    flip = lambda a, w: w if pg.is_identity(a) else 1 - w  # noqa: E731
    tc = transformation_category(pg, {v: [0, 1] for v in pg.vertices}, flip)
    assert len(tc.category) == 8
    # simply connected base: a two-sheeted carrier splits into two sheets
    comps = connected_components(tc.category)
    assert sorted(map(sorted, comps)) == [["x*0", "y*1"], ["x*1", "y*0"]]


def test_cocycle_action_carrier_is_the_skew_product():
    skew_transformation_iso(pair_skew(1))


def test_cayley_action_is_transitive_and_free():
    z2 = fx.group_category(Z2)
    ca = CocycleAction(z2, validate_cocycle(z2, Z2, {"0": 0, "1": 1})[0])
    orbits, stab = orbits_and_stabilizers(ca)
    assert len(orbits) == 1
    assert all(s == frozenset({"0"}) for s in stab.values())


def test_trivial_cocycle_splits_into_two_orbits():
    pg = fx.pair_groupoid()
    ca = CocycleAction(pg, validate_cocycle(pg, Z2, {m: 0 for m in pg.morphisms()})[0])
    orbits, _ = orbits_and_stabilizers(ca)
    assert orbits == [[("x", 0), ("y", 0)], [("x", 1), ("y", 1)]]
    assert not is_transitive(ca)


def test_trivial_group_transitive_iff_connected():
    e = trivial()
    pg = fx.pair_groupoid()
    assert is_transitive(CocycleAction(pg, validate_cocycle(pg, e, {m: 0 for m in pg.morphisms()})[0]))
    both = fx.disjoint_union(fx.pair_groupoid(), fx.point())
    assert not is_transitive(CocycleAction(both, validate_cocycle(both, e, {m: 0 for m in both.morphisms()})[0]))


def test_one_loop_skew_deck_group_has_order_two():
    nat = PathCategory(one_loop(), 4)
    sp = skew_product(nat, path_cocycle(nat, Z2, {"s": 1}), Z2)
    assert is_connected(sp.category)
    deck = deck_transformations(sp.projection)
    assert deck.order == 2
    assert translations_embed(sp, deck)


def test_trivial_group_deck_is_trivial():
    pg = fx.pair_groupoid()
    e = trivial()
    sp = skew_product(pg, validate_cocycle(pg, e, {m: 0 for m in pg.morphisms()})[0], e)
    assert deck_transformations(sp.projection).order == 1


def test_disconnected_skew_deck_contains_the_translation():
    sp = pair_skew(1)
    assert len(connected_components(sp.category)) == 2
    deck = deck_transformations(sp.projection)
    assert deck.index_of(right_translation(sp, 1)) is not None
    assert translations_embed(sp, deck)


@given(seeds)
def test_random_groupoid_stabilizers_are_conjugate(seed):
    rng = random.Random(seed)
    cat = fx.random_groupoid(rng, 3, 4, components=1)
    g = rng.choice(small_groups(4))
    ca = CocycleAction(cat, fx.random_groupoid_cocycle(cat, g, rng))
    assert stabilizers_conjugate(ca, {m: inverse_of(cat, m) for m in cat.morphisms()})


@given(seeds)
def test_random_skew_coverings(seed):
    rng = random.Random(seed)
    cat = fx.random_lc_category(rng, 15)
    g = rng.choice(small_groups(4))
    sp = skew_product(cat, fx.random_cocycle(cat, g, rng), g)
    assert is_covering(sp.projection)[0]
    skew_transformation_iso(sp)
    if len(sp.category) <= 60 and is_connected(sp.category):
        assert translations_embed(sp, deck_transformations(sp.projection))
