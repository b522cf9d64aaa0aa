import random

import pytest
from hypothesis import given, strategies as st

from skewcat import fixtures as fx, mutation
from skewcat.category import validate_cocycle
from skewcat.errors import Degenerate, NotConnected, NotConnectedBase, NotGroupoid
from skewcat.fpgroups import FpGroup, fp_invariants, free_group
from skewcat.groupoid import (
    as_groupoid,
    decomposition_check,
    fundamental_group,
    maximal_tree,
    pi_image,
    retraction_from_tree,
    seven_criteria_check,
    skew_connectivity_report,
    tree_from_retraction,
    universal_group,
)
from skewcat.groups import cyclic, dihedral, small_groups, trivial
from skewcat.paths import PathCategory, one_loop, two_loops
from skewcat.zappa import path_cocycle

seeds = st.integers(min_value=0, max_value=10_000)
Z2 = cyclic(2)


def z2_relator():
    return FpGroup(["g"], [(("g", 1), ("g", 1))])


def test_pair_groupoid_tree_and_retraction():
    pg = fx.pair_groupoid()
    tree = maximal_tree(pg, "x")
    assert tree.t == {"x": "x", "y": "a"}
    eta = retraction_from_tree(pg, tree)
    assert eta.target.name_of(eta("ā")) == "x"
    assert tree_from_retraction(pg, eta, "x").t == tree.t


def test_group_as_groupoid_tree_is_trivial():
    g = fx.group_category(cyclic(3))
    tree = maximal_tree(g, "*")
    assert tree.t == {"*": "0"}
    eta = retraction_from_tree(g, tree)
    assert all(eta.target.name_of(eta(m)) == m for m in g.morphisms())


def test_non_groupoid_rejected():
    with pytest.raises(NotGroupoid):
        as_groupoid(fx.arrow())


@given(seeds)
def test_tree_round_trip_on_random_groupoids(seed):
    cat = fx.random_groupoid(random.Random(seed), 3, 4, components=1)
    g = as_groupoid(cat)
    for x in cat.vertices:
        tree = maximal_tree(g, x)
        assert tree_from_retraction(g, retraction_from_tree(g, tree), x).t == tree.t
        decomposition_check(g, tree)


def test_fundamental_groups():
    assert fundamental_group(fx.pair_groupoid()).presentation.generators == ()
    nat = fundamental_group(PathCategory(one_loop(), 3)).presentation
    assert len(nat.generators) == 1 and nat.relators == ()
    par = fundamental_group(fx.parallel_arrows()).presentation
    assert len(par.generators) == 1 and par.relators == ()


def test_universal_groups_of_named_categories():
    z2 = fx.group_category(Z2)
    assert fp_invariants(universal_group(z2, "raw").presentation) == fp_invariants(z2_relator())
    pg = fx.pair_groupoid()
    for mode in ("raw", "connected"):
        assert fp_invariants(universal_group(pg, mode).presentation) == fp_invariants(free_group(1))
    free2 = universal_group(PathCategory(two_loops(), 3), "connected").presentation
    assert fp_invariants(free2) == fp_invariants(free_group(2))


def test_components_mode_is_a_free_product():
    both = fx.disjoint_union(fx.pair_groupoid(), fx.group_category(Z2, vertex="w"))
    ug = universal_group(both, "components")
    inv = fp_invariants(ug.presentation)
    assert inv.abelianization == (2, 0)


@given(seeds)
def test_cocycles_factor_through_the_universal_group(seed):
    rng = random.Random(seed)
    cat = fx.random_connected_lc_category(rng, 20)
    g = rng.choice([h for h in small_groups(6) if h.order > 1])
    eta = fx.random_cocycle(cat, g, rng)
    raw = universal_group(cat, "raw")
    conn = universal_group(cat, "connected")
    raw.factor(eta)
    conn.factor(eta)
    assert fp_invariants(raw.presentation) == fp_invariants(conn.presentation)


def test_connectivity_examples():
    pg = fx.pair_groupoid()
    eta, _ = validate_cocycle(pg, Z2, {"x": 0, "y": 0, "a": 1, "ā": 1})
    rep = skew_connectivity_report(pg, eta)
    assert rep["direct"] is False and rep["via_pi"] is False
    nat = PathCategory(one_loop(), 4)
    rep = skew_connectivity_report(nat, path_cocycle(nat, Z2, {"s": 1}))
    assert rep["direct"] and rep["via_pi"]
    e = trivial()
    rep = skew_connectivity_report(pg, validate_cocycle(pg, e, {m: 0 for m in pg.morphisms()})[0])
    assert rep["direct"] and rep["via_pi"]


def test_connectivity_needs_connected_base():
    both = fx.disjoint_union(fx.arrow(), fx.point())
    with pytest.raises(NotConnectedBase):
        skew_connectivity_report(both, validate_cocycle(both, Z2, {m: 0 for m in both.morphisms()})[0])


def test_pi_image_of_the_dihedral_surrogate():
    cat, psi = fx.dihedral_surrogate()
    assert len(pi_image(cat, psi)) == 4


def test_seven_criteria_on_named_groupoids():
    z2 = fx.group_category(Z2)
    psi, _ = validate_cocycle(z2, Z2, {"0": 0, "1": 1})
    verdict = seven_criteria_check(z2, psi)
    assert verdict["agree"] and verdict["1_skew_connected"]
    pg = fx.pair_groupoid()
    e = trivial()
    verdict = seven_criteria_check(pg, validate_cocycle(pg, e, {m: 0 for m in pg.morphisms()})[0])
    assert verdict["agree"] and verdict["1_skew_connected"]


def test_dihedral_surrogate_is_all_false():
    cat, psi = fx.dihedral_surrogate()
    assert psi.image() == set(dihedral(4).elements)
    verdict = seven_criteria_check(cat, psi)
    assert verdict["agree"]
    assert not any(v for k, v in verdict.items() if k != "agree")


def test_tree_outside_kernel_mutant_breaks_agreement():
    cat, psi = fx.dihedral_surrogate()
    with mutation.active("tree-outside-kernel"):
        verdict = seven_criteria_check(cat, psi)
    assert not verdict["agree"]


def test_seven_criteria_preconditions():
    pg = fx.pair_groupoid()
    with pytest.raises(Degenerate):
        seven_criteria_check(pg, validate_cocycle(pg, Z2, {m: 0 for m in pg.morphisms()})[0])
    both = fx.disjoint_union(fx.pair_groupoid(), fx.group_category(Z2, vertex="w"))
    values = {m: 0 for m in both.morphisms()}
    values["1"] = 1
    with pytest.raises(NotConnected):
        seven_criteria_check(both, validate_cocycle(both, Z2, values)[0])


@given(seeds)
def test_seven_criteria_agree_on_random_groupoids(seed):
    rng = random.Random(seed)
    cat = fx.pair_group_groupoid([str(i) for i in range(rng.randint(1, 3))], rng.choice(small_groups(4)), "w")
    h = rng.choice(small_groups(6))
    psi = fx.random_groupoid_cocycle(cat, h, rng)
    if not psi.is_nondegenerate():
        return
    assert seven_criteria_check(cat, psi)["agree"]
