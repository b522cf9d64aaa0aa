import random

import pytest
from hypothesis import given, strategies as st

from skewcat import fixtures as fx, mutation
from skewcat.actions import (
    gross_tucker,
    quotient_category,
    quotient_ideal_intersection,
    skew_quotient_iso,
    validate_action,
    validate_free_action,
)
from skewcat.category import is_isomorphism, validate_cocycle
from skewcat.errors import NotAction, NotAutomorphism, NotFree
from skewcat.groups import cyclic, trivial
from skewcat.skew import skew_group_action, skew_product
from skewcat.zappa import trivial_action

seeds = st.integers(min_value=0, max_value=10_000)
Z2 = cyclic(2)


def swap_on_pair():
    pg = fx.pair_groupoid()
    return validate_action(Z2, pg, fx.swap_action())


def test_swap_is_free():
    _, free, witness = validate_free_action(Z2, fx.pair_groupoid(), fx.swap_action())
    assert free and witness is None


def test_trivial_action_on_arrow_is_not_free():
    arrow = fx.arrow()
    _, free, witness = validate_free_action(Z2, arrow, trivial_action(arrow, Z2))
    assert not free
    assert witness == ("1", "u")


def test_canonical_skew_action_is_free():
    pg = fx.pair_groupoid()
    eta, _ = validate_cocycle(pg, Z2, {"x": 0, "y": 0, "a": 1, "ā": 1})
    assert skew_group_action(skew_product(pg, eta, Z2)).is_free()


def test_non_automorphisms_rejected():
    pg = fx.pair_groupoid()
    bad = {"0": {m: m for m in pg.morphisms()}, "1": {"x": "x", "y": "y", "a": "ā", "ā": "a"}}
    with pytest.raises(NotAutomorphism):
        validate_action(Z2, pg, bad)
    with pytest.raises(NotAction):
        validate_action(Z2, pg, {"0": fx.swap_action()["1"], "1": fx.swap_action()["1"]})


def test_pair_groupoid_mod_swap_is_z2():
    qr = quotient_category(swap_on_pair())
    q = qr.quotient
    assert len(q.vertices) == 1 and len(q) == 2
    assert q.compose("[a]", "[a]") == "[x]"


def test_quotient_by_trivial_group_is_the_category():
    pg = fx.pair_groupoid()
    qr = quotient_category(validate_action(trivial(), pg, trivial_action(pg, trivial())))
    assert is_isomorphism(qr.qmap)


def test_non_free_quotient_raises():
    arrow = fx.arrow()
    with pytest.raises(NotFree):
        quotient_category(validate_action(Z2, arrow, trivial_action(arrow, Z2)))


def test_skew_mod_group_is_the_base():
    pg = fx.pair_groupoid()
    eta, _ = validate_cocycle(pg, Z2, {"x": 0, "y": 0, "a": 1, "ā": 1})
    iso = skew_quotient_iso(skew_product(pg, eta, Z2))
    assert iso.codomain is pg


def test_ideal_intersection_on_the_swap_quotient():
    qr = quotient_category(swap_on_pair())
    assert quotient_ideal_intersection(qr, "a", "x") == {"[a]", "[x]"}
    assert quotient_ideal_intersection(qr, "a", "a") == {"[a]", "[x]"}


def test_ideal_intersection_empty_case():
    # two arrows swapped by Z2; e1 D misses both v1 D and v2 D
    from skewcat.category import validate_category

    both = validate_category(
        ["u1", "v1", "u2", "v2"],
        {"u1": ("u1", "u1"), "v1": ("v1", "v1"), "u2": ("u2", "u2"), "v2": ("v2", "v2"), "e1": ("v1", "u1"), "e2": ("v2", "u2")},
        [(i, i, i) for i in ("u1", "v1", "u2", "v2")] + [("u1", "e1", "e1"), ("e1", "v1", "e1"), ("u2", "e2", "e2"), ("e2", "v2", "e2")],
    )
    swap = {"u1": "u2", "u2": "u1", "v1": "v2", "v2": "v1", "e1": "e2", "e2": "e1"}
    action = validate_action(Z2, both, {"0": {m: m for m in both.morphisms()}, "1": swap})
    qr = quotient_category(action)
    assert quotient_ideal_intersection(qr, "e1", "v1") == frozenset()


def test_gross_tucker_on_the_swap():
    gt = gross_tucker(swap_on_pair())
    assert gt.cocycle("[a]") == 1
    assert is_isomorphism(gt.rho)


def test_gross_tucker_on_a_skew_product_recovers_it():
    from skewcat.category import are_isomorphic

    pg = fx.pair_groupoid()
    eta, _ = validate_cocycle(pg, Z2, {"x": 0, "y": 0, "a": 1, "ā": 1})
    sp = skew_product(pg, eta, Z2)
    gt = gross_tucker(skew_group_action(sp))
    assert are_isomorphic(gt.skew.category, sp.category)


def test_gross_tucker_trivial_group():
    pg = fx.pair_groupoid()
    gt = gross_tucker(validate_action(trivial(), pg, trivial_action(pg, trivial())))
    assert all(gt.cocycle(m) == 0 for m in gt.quotient.quotient.morphisms())


@given(seeds)
def test_gross_tucker_on_random_free_actions(seed):
    d, g, act = fx.random_free_action(random.Random(seed), 40, 4)
    action, free, _ = validate_free_action(g, d, act)
    assert free
    gt = gross_tucker(action)
    qr = gt.quotient
    for lam in d.morphisms():
        for mu in d.morphisms():
            quotient_ideal_intersection(qr, lam, mu)


def test_dropped_freeness_check_is_visible():
    arrow = fx.arrow()
    with mutation.active("no-freeness"):
        _, free, _ = validate_free_action(Z2, arrow, trivial_action(arrow, Z2))
    assert free


def test_infinite_group_action_is_unsupported():
    from skewcat.errors import BudgetedUnsupported
    from skewcat.groups import IntegerGroup

    with pytest.raises(BudgetedUnsupported):
        validate_action(IntegerGroup(), fx.arrow(), {})
