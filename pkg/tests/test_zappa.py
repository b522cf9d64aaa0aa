import random

import pytest
from hypothesis import given, strategies as st

from skewcat import fixtures as fx
from skewcat.actions import validate_action
from skewcat.category import is_isomorphism
from skewcat.errors import NotACategory, NotInvariant, ShapeMismatch, ZeroColumn
from skewcat.groups import IntegerGroup, cyclic, small_groups, trivial
from skewcat.paths import PathCategory, one_loop, single_edge
from skewcat.skew import semidirect_product
from skewcat.zappa import (
    CategorySystem,
    direct_product,
    exchange_isomorphism_check,
    katsura_system,
    path_cocycle,
    promote_invariant_cocycle,
    semidirect_direct,
    trivial_action,
    two_loop_swap,
    zs_product,
)

seeds = st.integers(min_value=0, max_value=10_000)
Z2 = cyclic(2)


def test_two_loop_multiplication():
    zs = zs_product(two_loop_swap(3).category_system())
    assert zs.category.compose((("a",), 1), (("b",), 0)) == (("a", "a"), 1)


def test_trivial_group_product_is_the_category():
    pg = fx.pair_groupoid()
    e = trivial()
    zs = zs_product(CategorySystem(pg, e, lambda h, a: a, lambda h, a: h))
    assert len(zs.category) == len(pg)
    assert zs.category.to_spec()["compose"] == [[f"{a}⋊e", f"{b}⋊e", f"{c}⋊e"] for a, b, c in pg.to_spec()["compose"]]


def test_path_categories():
    arrow = PathCategory(single_edge(), 5)
    assert sorted(map(str, arrow.morphisms())) == sorted(["u", "v", "('e',)"])
    nat = PathCategory(one_loop(), 3)
    assert nat.morphisms() == ("v", ("s",), ("s", "s"), ("s", "s", "s"))


def test_constant_length_cocycle_promotes_to_length():
    ep = two_loop_swap(3)
    paths = ep.path_category()
    psi = path_cocycle(paths, IntegerGroup(), {"a": 1, "b": 1})
    eta, zs = promote_invariant_cocycle(ep.category_system(), psi)
    for m in zs.category.morphisms():
        path = zs.pair_of(m)[0]
        assert eta(m) == (len(path) if isinstance(path, tuple) else 0)


def test_non_invariant_cocycle_rejected():
    ep = two_loop_swap(3)
    psi = path_cocycle(ep.path_category(), Z2, {"a": 0, "b": 1})
    with pytest.raises(NotInvariant) as info:
        promote_invariant_cocycle(ep.category_system(), psi)
    assert info.value.witness == ("1", ("a",))


def test_exchange_isomorphism_on_two_loops():
    ep = two_loop_swap(3)
    psi = path_cocycle(ep.path_category(), Z2, {"a": 1, "b": 1})
    f = exchange_isomorphism_check(ep.category_system(), psi, Z2)
    assert len(f.mmap) == len(f.domain.morphisms())


def test_exchange_with_trivial_groups():
    pg = fx.pair_groupoid()
    e = trivial()
    system = CategorySystem(pg, e, lambda h, a: a, lambda h, a: h)
    from skewcat.category import validate_cocycle

    psi, _ = validate_cocycle(pg, Z2, {"x": 0, "y": 0, "a": 1, "ā": 1})
    assert is_isomorphism(exchange_isomorphism_check(system, psi, Z2))
    psi_e, _ = validate_cocycle(pg, e, {m: 0 for m in pg.morphisms()})
    swap = validate_action(Z2, pg, fx.swap_action())
    system2 = CategorySystem(pg, Z2, lambda h, a: swap(h, a), lambda h, a: h)
    assert is_isomorphism(exchange_isomorphism_check(system2, psi_e, e))


def test_katsura_divisible_case_is_a_category():
    ep = katsura_system([[2]], [[2]], 3, 3)
    zs = zs_product(ep.category_system())
    assert len(zs.category.morphisms()) == 45


def test_katsura_rule_does_not_descend_when_a_does_not_divide_b():
    with pytest.raises(NotACategory):
        zs_product(katsura_system([[2]], [[1]], 2, 3).category_system())


def test_katsura_input_checks():
    with pytest.raises(ShapeMismatch):
        katsura_system([[1, 0]], [[1]], 2)
    with pytest.raises(ZeroColumn):
        katsura_system([[1, 0], [1, 0]], [[1, 1], [1, 1]], 2)


@given(seeds)
def test_trivial_phi_is_the_semidirect_product(seed):
    d, g, act = fx.random_free_action(random.Random(seed), 30, 4)
    action = validate_action(g, d, act)
    zs = semidirect_product(d, action)
    sd = semidirect_direct(d, g, lambda h, a: action(h, a))
    assert zs.category.to_spec() == sd.category.to_spec()


@given(seeds)
def test_trivial_action_is_the_direct_product(seed):
    rng = random.Random(seed)
    cat = fx.random_lc_category(rng, 15)
    k = rng.choice(small_groups(4))
    action = validate_action(k, cat, trivial_action(cat, k))
    assert semidirect_product(cat, action).category.to_spec() == direct_product(cat, k).category.to_spec()
