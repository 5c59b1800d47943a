"""Forest model: parsing, printing, structure, orders, induced subforests."""

import json

import pytest

from foresthopf import (
    DecorationRegistry,
    EMPTY_FOREST,
    InvalidGraftError,
    ParseError,
    RegistryError,
    SizeLimitError,
    concat,
    enumerate_forests,
    forest_of,
    graft,
    induced_subforest,
    leq_h,
    leq_r,
    make_leaf,
    parse_forest,
    stats,
    vertex_table,
)
from foresthopf.forests import _forest_from_key


# -- registry ---------------------------------------------------------------


def test_registry_rejects_empty_omega():
    with pytest.raises(RegistryError):
        DecorationRegistry(["x"], [])


def test_registry_rejects_overlap_and_duplicates():
    with pytest.raises(RegistryError):
        DecorationRegistry(["x"], ["x", "a"])
    with pytest.raises(RegistryError):
        DecorationRegistry(["x", "x"], ["a"])


def test_registry_rejects_bad_identifiers():
    with pytest.raises(RegistryError):
        DecorationRegistry(["x"], ["a b"])
    with pytest.raises(RegistryError):
        DecorationRegistry(["1x"], ["a"])


def test_registry_json_round_trip(reg):
    obj = reg.to_json_obj()
    assert obj == {"x": ["x", "y"], "omega": ["a", "b", "c"]}
    back = DecorationRegistry.from_json(json.dumps(obj))
    assert back.to_json_obj() == obj


def test_registry_from_json_rejects_garbage():
    with pytest.raises(RegistryError):
        DecorationRegistry.from_json("not json")
    with pytest.raises(RegistryError):
        DecorationRegistry.from_json("[1, 2]")


def test_decoration_reuse_across_registries(reg):
    # The same name with the same role is the same interned object, so
    # forests stay comparable across registries.
    other = DecorationRegistry(["x"], ["a"])
    assert other.decoration("x") is reg.decoration("x")
    assert other.decoration("a") is reg.decoration("a")
    with pytest.raises(RegistryError):
        reg.decoration("nope")


# -- parsing and printing ---------------------------------------------------


def test_parse_print_round_trip(P):
    for text in ["1", "x", "a", "a[x]", "x a[y]", "a[x b]", "a[b[x y] c] x"]:
        assert P(text).text == text


def test_empty_brackets_normalize(P):
    assert P("a[1]") == P("a")
    assert P("a[1]").text == "a"


def test_parse_errors(P):
    for bad in ["x[a]", "a 1", "1 a", "a[", "a]", "", "a[x,y]", "z"]:
        with pytest.raises(ParseError):
            P(bad)


def test_parse_error_position(P):
    with pytest.raises(ParseError) as e:
        P("a[z]")
    assert e.value.position == 2


def test_x_cannot_have_children(P, reg):
    with pytest.raises(ParseError):
        P("x[a]")
    with pytest.raises(InvalidGraftError):
        graft(reg.decoration("x"), P("a"))


# -- structure --------------------------------------------------------------


def test_stats_weight_breadth_depth(P):
    assert stats(P("1")) == (0, 0, 0, 0)
    assert stats(P("x")) == (1, 1, 0, 1)
    assert stats(P("a")) == (1, 1, 1, 0)
    assert stats(P("a[x]")) == (2, 1, 1, 1)
    assert stats(P("x a[y]")) == (3, 2, 1, 2)
    assert stats(P("a[b[x]]")) == (3, 1, 2, 1)
    # the omega leaf b sits at filtration level 1, so a[x b] reaches 2
    assert stats(P("a[x b]")) == (3, 1, 2, 1)


def test_depth_is_max_over_trees(P):
    assert P("a[b[x]] a").depth == 2
    assert P("x y").depth == 0


def test_concat_and_units(P):
    f, g = P("a[x]"), P("b")
    assert concat(f, g).text == "a[x] b"
    assert concat(f, EMPTY_FOREST) == f
    assert concat(EMPTY_FOREST, f) == f
    assert concat(f, g) != concat(g, f)


def test_graft_and_make_leaf(reg, P):
    a = reg.decoration("a")
    t = graft(a, P("x y"))
    assert t.as_forest() == P("a[x y]")
    assert make_leaf(a) == P("a")
    assert forest_of([t, t]).text == "a[x y] a[x y]"


def test_vertex_table(P):
    rows = vertex_table(P("a b[x y]"))
    assert [(r.index, r.decoration.name, r.parent) for r in rows] == [
        (1, "a", None),
        (2, "b", None),
        (3, "x", 2),
        (4, "y", 2),
    ]


def test_forest_key_round_trip(reg):
    for w in range(5):
        for f in enumerate_forests(w, reg):
            assert _forest_from_key(f.key) is f


def test_key_layout(P, reg):
    # Two bytes per vertex: parent offset (0 for roots), then decoration id.
    f = P("a[x]")
    assert len(f.key) == 4
    assert f.key[0] == 0 and f.key[2] == 1
    assert f.key[1] == reg.decoration("a").index
    assert f.key[3] == reg.decoration("x").index


def test_key_concatenates(P):
    assert concat(P("a[x]"), P("b")).key == P("a[x]").key + P("b").key


# -- the two vertex orders --------------------------------------------------


def test_orders_on_example(P):
    # a b[x y]: canonical order a(1) b(2) x(3) y(4)
    f = P("a b[x y]")
    assert leq_h(f, 2, 3) and leq_h(f, 2, 4)
    assert not leq_h(f, 1, 2)
    assert not leq_h(f, 3, 4)
    assert leq_r(f, 1, 2) and leq_r(f, 1, 3) and leq_r(f, 3, 4)
    assert not leq_r(f, 2, 3)  # comparable for ≤_h instead


def test_orders_are_reflexive_and_exclusive(P):
    f = P("a[b[x] y] c")
    n = f.weight
    for i in range(1, n + 1):
        assert leq_h(f, i, i) and leq_r(f, i, i)
        for j in range(i + 1, n + 1):
            # ≤_{h,r} is total: exactly one of h, r holds for i < j.
            assert leq_h(f, i, j) != leq_r(f, i, j)
            assert not leq_h(f, j, i) and not leq_r(f, j, i)


def test_canonical_order_is_preorder(P):
    # vertex i+1 of a[b[x] y] c in text reading order
    f = P("a[b[x] y] c")
    assert [r.decoration.name for r in vertex_table(f)] == ["a", "b", "x", "y", "c"]


# -- induced subforests -----------------------------------------------------

# Every subset of a b[x y], keyed by 1-based canonical indices; this is the
# full sixteen-row table of the worked example.
INDUCED_TABLE = {
    (): "1",
    (1,): "a",
    (2,): "b",
    (3,): "x",
    (4,): "y",
    (1, 2): "a b",
    (1, 3): "a x",
    (1, 4): "a y",
    (2, 3): "b[x]",
    (2, 4): "b[y]",
    (3, 4): "x y",
    (1, 2, 3): "a b[x]",
    (1, 2, 4): "a b[y]",
    (1, 3, 4): "a x y",
    (2, 3, 4): "b[x y]",
    (1, 2, 3, 4): "a b[x y]",
}


def test_induced_subforest_table(P):
    f = P("a b[x y]")
    for indices, expected in INDUCED_TABLE.items():
        assert induced_subforest(f, indices).text == expected


def test_induced_skips_to_nearest_kept_ancestor(P):
    f = P("a[b[x]]")
    assert induced_subforest(f, [1, 3]).text == "a[x]"
    assert induced_subforest(f, [3]).text == "x"


def test_induced_is_transitive(P):
    f = P("a[b[x y] c]")
    inner = induced_subforest(f, [1, 3, 4, 5])  # a[x y c]
    assert inner.text == "a[x y c]"
    assert induced_subforest(inner, [2, 4]) == induced_subforest(f, [3, 5])


def test_induced_validates_indices(P):
    f = P("a[x]")
    with pytest.raises(IndexError):
        induced_subforest(f, [0])
    with pytest.raises(IndexError):
        induced_subforest(f, [3])


def test_induced_size_guard(reg, P):
    big = concat(*[P("a") for _ in range(65)])
    with pytest.raises(SizeLimitError):
        induced_subforest(big, [1])


# -- enumeration ------------------------------------------------------------


def _count_oracle(n_x, n_omega, upto):
    # Independent grammar recurrence: trees t_n, forests f_n.
    t = [0] * (upto + 1)
    f = [0] * (upto + 1)
    f[0] = 1
    for n in range(1, upto + 1):
        t[n] = n_omega * f[n - 1] + (n_x if n == 1 else 0)
        f[n] = sum(t[k] * f[n - k] for k in range(1, n + 1))
    return f


def test_enumeration_counts(reg, reg_small, reg_tiny, reg_plain):
    for r, (nx, no) in [
        (reg, (2, 3)),
        (reg_small, (1, 2)),
        (reg_tiny, (1, 1)),
        (reg_plain, (0, 1)),
    ]:
        expect = _count_oracle(nx, no, 4)
        got = [len(list(enumerate_forests(n, r))) for n in range(5)]
        assert got == expect


def test_enumeration_is_sorted_and_exhaustive(reg_small):
    forests = list(enumerate_forests(3, reg_small))
    texts = [f.text for f in forests]
    assert texts == sorted(texts)
    assert len(set(texts)) == len(texts)
    assert all(f.weight == 3 for f in forests)


def test_enumerate_weight_zero(reg):
    assert list(enumerate_forests(0, reg)) == [EMPTY_FOREST]
