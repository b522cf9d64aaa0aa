import random

from hypothesis import given, strategies as st

from skewcat import fixtures as fx, mutation
from skewcat.actions import validate_action
from skewcat.category import connected_components, is_isomorphism, is_left_cancellative, validate_cocycle
from skewcat.groups import cyclic, small_groups, trivial
from skewcat.paths import PathCategory, two_loops
from skewcat.skew import (
    exhaustive_transport_holds,
    skew_group_action,
    skew_join_check,
    skew_join_formula,
    skew_product,
)
from skewcat.zappa import direct_product, path_cocycle, trivial_action

seeds = st.integers(min_value=0, max_value=10_000)
Z2 = cyclic(2)


def pair_skew(value=1):
    pg = fx.pair_groupoid()
    eta, _ = validate_cocycle(pg, Z2, {"x": 0, "y": 0, "a": value, "ā": value})
    return skew_product(pg, eta, Z2)


def test_skew_of_a_point_is_discrete():
    g = cyclic(5)
    sp = skew_product(fx.point(), validate_cocycle(fx.point(), g, {"*": 0})[0], g)
    assert len(sp.category.vertices) == 5
    assert sp.category.non_identities() == []


def test_pair_groupoid_skew_shape():
    sp = pair_skew()
    cat = sp.category
    assert len(cat.vertices) == 4 and len(cat) == 8
    a0 = sp.id_of(("a", 0))
    assert cat.src(a0) == sp.vertex_id("x", 0)
    assert cat.rng(a0) == sp.vertex_id("y", 1)


def test_trivial_group_skew_is_isomorphic_to_base():
    pg = fx.pair_groupoid()
    e = trivial()
    sp = skew_product(pg, validate_cocycle(pg, e, {m: 0 for m in pg.morphisms()})[0], e)
    assert is_isomorphism(sp.projection)


def test_mismatched_tops_give_empty_join():
    sp = pair_skew()
    # eta(a) 0 = 1 but eta(y) 0 = 0
    assert skew_join_formula(sp, sp.id_of(("a", 0)), sp.id_of(("y", 0))) == frozenset()
    assert skew_join_check(sp, sp.id_of(("a", 0)), sp.id_of(("y", 0))) == frozenset()


def test_join_with_itself():
    sp = pair_skew()
    for m in sp.category.morphisms():
        assert len(skew_join_check(sp, m, m)) == 1


def test_two_loop_skew_by_length_parity():
    paths = PathCategory(two_loops(), 3)
    eta = path_cocycle(paths, Z2, {"a": 1, "b": 1})
    sp = skew_product(paths, eta, Z2)
    assert skew_join_check(sp, (("a",), 0), (("b",), 0)) == frozenset()
    assert skew_join_check(sp, (("a",), 0), (("a", "b"), 1)) == {(("a", "b"), 1)}


def test_canonical_action_moves_the_group_coordinate():
    sp = pair_skew()
    act = skew_group_action(sp)
    assert act(1, sp.id_of(("a", 0))) == sp.id_of(("a", 1))
    for m in sp.category.morphisms():
        assert act(0, m) == m
    assert act.freeness_witness() is None


def test_trivial_action_gives_the_direct_product():
    from skewcat.skew import semidirect_product

    arrow = fx.arrow()
    action = validate_action(Z2, arrow, trivial_action(arrow, Z2))
    assert semidirect_product(arrow, action).category.to_spec() == direct_product(arrow, Z2).category.to_spec()


def test_swap_semidirect_product_is_connected():
    from skewcat.skew import semidirect_product

    pg = fx.pair_groupoid()
    product = semidirect_product(pg, validate_action(Z2, pg, fx.swap_action()))
    assert len(product.category) == 8
    assert len(connected_components(product.category)) == 1


@given(seeds)
def test_random_skew_products_satisfy_the_join_formula(seed):
    rng = random.Random(seed)
    cat = fx.random_lc_category(rng, 20)
    g = rng.choice(small_groups(6))
    eta = fx.random_cocycle(cat, g, rng)
    sp = skew_product(cat, eta, g)
    assert is_left_cancellative(sp.category)[0]
    ms = sp.category.morphisms()
    for p in ms:
        for q in ms:
            skew_join_check(sp, p, q)


@given(seeds)
def test_exhaustive_sets_transport_to_the_skew_product(seed):
    rng = random.Random(seed)
    cat = fx.random_lc_category(rng, 15)
    g = rng.choice(small_groups(4))
    sp = skew_product(cat, fx.random_cocycle(cat, g, rng), g)
    for v in cat.vertices:
        family = [m for m in cat.with_range(v) if rng.random() < 0.4]
        for h in g.elements:
            assert exhaustive_transport_holds(sp, v, family, h)


def test_flipped_composability_breaks_the_skew_product():
    from skewcat.errors import SkewcatError

    rng = random.Random(3)
    broke = False
    with mutation.active("skew-flip"):
        for _ in range(20):
            cat = fx.random_lc_category(rng, 20)
            g = cyclic(3)
            eta = fx.random_nondegenerate_cocycle(cat, g, rng)
            if eta is None:
                continue
            try:
                sp = skew_product(cat, eta, g)
                for p in sp.category.morphisms():
                    for q in sp.category.morphisms():
                        skew_join_check(sp, p, q)
            except SkewcatError:
                broke = True
                break
    assert broke
