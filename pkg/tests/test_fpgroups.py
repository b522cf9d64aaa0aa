import pytest
from hypothesis import given, strategies as st

from skewcat.errors import BatteryTooLarge, ParseError
from skewcat.fpgroups import (
    FpGroup,
    abelianization,
    fp_invariants,
    free_group,
    free_product,
    hom_count,
    parse_word,
    render_word,
    simplify,
)
from skewcat.groups import battery, cyclic, symmetric3

letters = st.sampled_from(["a", "b", "c"])
words = st.lists(st.tuples(letters, st.sampled_from([1, -1])), max_size=8)


def test_free_group_invariants():
    inv = fp_invariants(free_group(2))
    assert inv.abelianization == (0, 0)
    assert dict(inv.hom_counts)["S3"] == 36


def test_order_two_relator():
    g = FpGroup(["g"], [(("g", 1), ("g", 1))])
    assert abelianization(g) == [2]
    assert hom_count(g, symmetric3()) == 4


def test_trivial_presentation():
    inv = fp_invariants(FpGroup([], []))
    assert inv.abelianization == ()
    assert all(count == 1 for _, count in inv.hom_counts)


def test_simplify_eliminates_and_resolves():
    g = FpGroup(["a", "b"], [(("a", 1), ("b", -1))])
    s = simplify(g)
    assert len(s.generators) == 1 and s.relators == ()
    assert s.resolve((("a", 1), ("b", -1))) == ()


def test_words_render_and_parse():
    w = (("a", 1), ("a", 1), ("b", -1))
    assert render_word(w) == "a^2 b^-1"
    assert parse_word("a^2 b^-1") == w
    assert render_word(()) == "1"
    with pytest.raises(ParseError):
        parse_word("a^x")
    with pytest.raises(ParseError):
        parse_word("c", {"a"})


@given(words)
def test_parse_inverts_render(word):
    from skewcat.groups import reduce_word

    w = reduce_word(word)
    assert parse_word(render_word(w)) == w


def test_free_products_add_invariants():
    z2 = FpGroup(["g"], [(("g", 1), ("g", 1))])
    both = free_product(z2, free_group(1), prefixes=["l_", "r_"])
    assert fp_invariants(both).abelianization == (2, 0)


def test_battery_has_the_six_groups():
    assert [g.label for g in battery()] == ["Z2", "Z3", "S3", "Z4", "Z2xZ2", "D4"]


def test_hom_search_budget():
    with pytest.raises(BatteryTooLarge):
        hom_count(FpGroup(["a", "b"], [(("a", 1), ("b", 1), ("a", -1), ("b", -1))]), cyclic(8), bound=10)
