import random

import pytest
from hypothesis import given, strategies as st

from skewcat import fixtures as fx
from skewcat.category import (
    canonical_representatives,
    category_from_spec,
    connected_components,
    equivalence_classes,
    invertibles,
    is_left_cancellative,
    validate_category,
    validate_cocycle,
)
from skewcat.errors import AxiomViolation, DuplicateId, MissingComposite, NotFunctorial, VertexNotUnit
from skewcat.groups import IntegerGroup, cyclic, trivial
from skewcat.skew import skew_product

seeds = st.integers(min_value=0, max_value=10_000)


def test_pair_groupoid_is_valid():
    cat = fx.pair_groupoid()
    assert len(cat) == 4
    assert cat.compose("a", "ā") == "y" and cat.compose("ā", "a") == "x"


def test_missing_identity_composite_is_reported():
    spec = fx.pair_groupoid_spec()
    spec["compose"] = [t for t in spec["compose"] if tuple(t) != ("a", "x", "a")]
    with pytest.raises(MissingComposite) as info:
        category_from_spec(spec)
    assert info.value.witness == ("a", "x")


def test_arrow_category_is_valid():
    cat = fx.arrow()
    assert cat.src("e") == "v" and cat.rng("e") == "u"


def test_duplicate_ids_rejected():
    with pytest.raises(DuplicateId):
        validate_category(["x", "x"], {"x": ("x", "x")}, [("x", "x", "x")])


def test_two_composites_rejected():
    spec = fx.pair_groupoid_spec()
    spec["compose"] = list(spec["compose"]) + [["a", "x", "ā"]]
    with pytest.raises(AxiomViolation) as info:
        category_from_spec(spec)
    assert info.value.axiom in ("single-valued", "range-source")


def test_left_cancellativity_examples():
    assert is_left_cancellative(fx.pair_groupoid()) == (True, None)
    assert is_left_cancellative(fx.arrow()) == (True, None)
    ok, witness = is_left_cancellative(fx.idempotent_monoid())
    assert not ok
    a, b, c = witness
    assert a == "z" and {b, c} == {"z", "1"}


def test_invertibles_and_classes():
    pg = fx.pair_groupoid()
    assert invertibles(pg) == frozenset(pg.morphisms())
    assert {frozenset(c) for c in equivalence_classes(pg)} == {frozenset({"x", "ā"}), frozenset({"y", "a"})}
    arrow = fx.arrow()
    assert invertibles(arrow) == {"u", "v"}
    assert sorted(map(sorted, equivalence_classes(arrow))) == [["e"], ["u"], ["v"]]
    z2 = fx.group_category(cyclic(2))
    assert invertibles(z2) == frozenset(z2.morphisms())
    assert len(equivalence_classes(z2)) == 1


def test_components():
    assert connected_components(fx.arrow()) == [frozenset({"u", "v"})]
    both = fx.disjoint_union(fx.arrow(), fx.point())
    assert sorted(map(sorted, connected_components(both))) == [["*"], ["u", "v"]]
    pg = fx.pair_groupoid()
    eta, _ = validate_cocycle(pg, cyclic(2), {"x": 0, "y": 0, "a": 1, "ā": 1})
    assert len(connected_components(skew_product(pg, eta, cyclic(2)).category)) == 2


def test_cocycle_into_integers_has_image_plus_minus_one():
    pg = fx.pair_groupoid()
    eta, nondeg = validate_cocycle(pg, IntegerGroup(), {"x": 0, "y": 0, "a": 1, "ā": -1})
    assert eta.image() == {0, 1, -1}
    assert nondeg


def test_non_functorial_cocycle_names_the_pair():
    z2 = cyclic(2)
    cat = fx.group_category(z2)
    z3 = cyclic(3)
    with pytest.raises(NotFunctorial) as info:
        validate_cocycle(cat, z3, {"0": 0, "1": 1})
    assert info.value.witness == ("1", "1")


def test_cocycle_must_be_unit_on_identities():
    with pytest.raises(VertexNotUnit):
        validate_cocycle(fx.arrow(), cyclic(2), {"u": 1, "v": 0, "e": 1})


def test_trivial_target_is_nondegenerate():
    _, nondeg = validate_cocycle(fx.arrow(), trivial(), {"u": 0, "v": 0, "e": 0})
    assert nondeg


@given(seeds)
def test_random_categories_round_trip(seed):
    cat = fx.random_lc_category(random.Random(seed), 30)
    again = category_from_spec(cat.to_spec())
    assert again.to_spec() == cat.to_spec()
    assert is_left_cancellative(cat)[0]


@given(seeds)
def test_canonical_representative_is_least_in_class(seed):
    cat = fx.random_groupoid(random.Random(seed), 3, 4)
    reps = canonical_representatives(cat)
    for cls in equivalence_classes(cat):
        assert {reps[m] for m in cls} == {min(cls)}
