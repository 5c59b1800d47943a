"""Matrix codec, representability conditions, and completion sets."""

import pytest

from foresthopf import (
    EMPTY_FOREST,
    ForestMatrix,
    NotRepresentableError,
    ParseError,
    QuasiShuffle,
    ShapeMismatchError,
    Shuffle,
    decode,
    encode,
    enumerate_forests,
    fm_sigma,
    fm_sigma_quasi,
    induced_subforest,
    is_representable,
    matrix_to_text,
    parse_matrix,
    quasi_shuffles,
    shuffles,
)


# -- encoding fixtures --------------------------------------------------------

ENCODINGS = {
    "x": "x =",
    "a[x]": "a = h\nx 0 =",
    "a x": "a = r\nx 0 =",
    "a[x y]": "a = h h\nx 0 = r\ny 0 0 =",
    "a[b[x]]": "a = h h\nb 0 = h\nx 0 0 =",
}


def test_encode_fixtures(P):
    for text, expected in ENCODINGS.items():
        assert matrix_to_text(encode(P(text))) == expected


def test_encode_empty():
    m = encode(EMPTY_FOREST)
    assert m.n == 0 and m.shape == (0, 1)
    assert matrix_to_text(m) == ""


def test_matrix_text_round_trip(reg, reg_small):
    for w in range(4):
        for f in enumerate_forests(w, reg_small):
            m = encode(f)
            assert parse_matrix(matrix_to_text(m), reg) == m


def test_codec_round_trip(reg_small):
    for w in range(5):
        for f in enumerate_forests(w, reg_small):
            m = encode(f)
            assert is_representable(m, reg_small)
            assert decode(m, reg_small) is f


def test_parse_matrix_errors(reg):
    with pytest.raises(ParseError):
        parse_matrix("a = h", reg)  # 3 tokens but 1 row wants 2
    with pytest.raises(ParseError):
        parse_matrix("q =", reg)
    with pytest.raises(ParseError):
        parse_matrix("a ?", reg)
    assert parse_matrix("", reg).n == 0


def test_matrix_value_semantics(P, reg):
    m = encode(P("a[x]"))
    assert m.entry(1, 0) is reg.decoration("a")
    assert m.entry(1, 2).value == "h"
    assert m.entry(2, 1).value == "0"
    with pytest.raises(IndexError):
        m.entry(0, 0)
    with pytest.raises(IndexError):
        m.entry(1, 3)
    with pytest.raises(AttributeError):
        m.n = 5
    assert m == encode(P("a[x]")) and hash(m) == hash(encode(P("a[x]")))
    assert m != encode(P("a x"))
    assert m.to_json_obj() == {"n": 2, "rows": [["a", "=", "h"], ["x", "0", "="]]}


def test_shape_guard(reg):
    d = (reg.decoration("a"),)
    with pytest.raises(ShapeMismatchError):
        ForestMatrix(d, ())


# -- representability conditions ---------------------------------------------


def _cond(text, reg):
    rep = is_representable(parse_matrix(text, reg), reg)
    assert not rep
    return rep.condition


def test_condition_a(P, reg, reg_small):
    # registered elsewhere, but not in the registry being checked
    rep = is_representable(encode(P("c")), reg_small)
    assert not rep and rep.condition == "a"
    assert "c" in (rep.detail or "")


def test_conditions_b_to_f(reg):
    assert _cond("a = h\nx r =", reg) == "b"
    assert _cond("a r h\nx 0 =", reg) == "c"
    assert _cond("a = 0\nx 0 =", reg) == "d"
    assert _cond("x = h\nb 0 =", reg) == "e"
    assert _cond("a = h r\nb 0 = h\nc 0 0 =", reg) == "f"


def test_condition_f_allows_the_five_patterns(reg):
    # every 3-vertex forest realizes one of the five allowed triples
    seen = set()
    for f in enumerate_forests(3, reg):
        m = encode(f)
        seen.add((m.entry(1, 2), m.entry(1, 3), m.entry(2, 3)))
        assert is_representable(m, reg)
    assert len(seen) == 5


def test_decode_rejects_with_condition(reg):
    with pytest.raises(NotRepresentableError) as e:
        decode(parse_matrix("x = h\nb 0 =", reg), reg)
    assert e.value.condition == "e"


# -- shuffles and quasi-shuffles ----------------------------------------------


def test_shuffle_counts_and_order():
    assert len(shuffles(1, 2)) == 3
    assert len(shuffles(2, 2)) == 6
    assert len(shuffles(3, 2)) == 10
    assert len(shuffles(0, 4)) == 1
    assert [str(s) for s in shuffles(1, 2)] == ["(123)", "(213)", "(312)"]
    assert [str(s) for s in shuffles(2, 2)] == [
        "(1234)", "(1324)", "(1423)", "(2314)", "(2413)", "(3412)",
    ]


def test_shuffle_validation():
    with pytest.raises(ValueError):
        Shuffle(1, 1, (1, 1))
    with pytest.raises(ValueError):
        Shuffle(2, 0, (2, 1))
    with pytest.raises(ValueError):
        Shuffle(1, 1, (1, 2, 3))
    with pytest.raises(ValueError):
        shuffles(-1, 2)
    s = Shuffle(1, 2, (3, 1, 2))
    assert s(1) == 3 and s(3) == 2


def test_quasi_shuffle_counts():
    # Delannoy numbers: D(1,1)=3, D(1,2)=5, D(2,2)=13
    assert len(quasi_shuffles(1, 1)) == 3
    assert len(quasi_shuffles(1, 2)) == 5
    assert len(quasi_shuffles(2, 2)) == 13
    assert len(quasi_shuffles(0, 3)) == 1


def test_bijective_quasi_shuffles_are_the_shuffles():
    plain = {s.sigma for s in shuffles(2, 2)}
    quasi = {q.sigma for q in quasi_shuffles(2, 2) if q.merges == 0}
    assert plain == quasi


def test_quasi_shuffle_validation_and_merges():
    q = QuasiShuffle(1, 2, (2, 1, 2))
    assert q.m == 2 and q.merges == 1 and str(q) == "(212)"
    with pytest.raises(ValueError):
        QuasiShuffle(1, 1, (3, 1))  # not surjective onto 1..3
    with pytest.raises(ValueError):
        QuasiShuffle(2, 1, (2, 1, 1))  # first block not increasing


# -- completion sets ----------------------------------------------------------


def _completion_texts(P, reg, f_text, g_text):
    a, b = encode(P(f_text)), encode(P(g_text))
    out = {}
    for sigma in shuffles(a.n, b.n):
        ms = fm_sigma(a, b, sigma, reg)
        out[str(sigma)] = {decode(m, reg).text for m in ms}
    return out


def test_completions_one_omega_vertex_times_chain(P, reg):
    got = _completion_texts(P, reg, "a", "b[c]")
    assert got == {
        "(123)": {"a[b[c]]", "a b[c]"},
        "(213)": {"b[a[c]]", "b[a c]"},
        "(312)": {"b[c[a]]", "b[c a]", "b[c] a"},
    }


def test_completions_one_leaf_vertex_times_chain(P, reg):
    got = _completion_texts(P, reg, "x", "b[c]")
    assert got == {
        "(123)": {"x b[c]"},
        "(213)": {"b[x c]"},
        "(312)": {"b[c[x]]", "b[c x]", "b[c] x"},
    }


def test_completions_pair_times_chain(P, reg):
    got = _completion_texts(P, reg, "a x", "b[c]")
    assert got == {
        "(1234)": {"a x b[c]"},
        "(1324)": {"a b[x c]"},
        "(1423)": {"a[b[c]] x", "a b[c] x", "a b[c x]", "a b[c[x]]"},
        "(2314)": {"b[a x c]"},
        "(2413)": {"b[a c x]", "b[a c[x]]", "b[a c] x", "b[a[c] x]", "b[a[c]] x"},
        "(3412)": {
            "b[c[a x]]", "b[c a x]", "b[c a] x", "b[c] a x", "b[c[a] x]", "b[c[a]] x",
        },
    }


def test_completion_defining_property(P, reg):
    # every completion restricts back to its operands along the shuffle
    f, g = P("a x"), P("b[c]")
    a, b = encode(f), encode(g)
    for sigma in shuffles(2, 2):
        first = [sigma(i) for i in range(1, 3)]
        second = [sigma(i) for i in range(3, 5)]
        for m in fm_sigma(a, b, sigma, reg):
            h = decode(m, reg)
            assert induced_subforest(h, first) is f
            assert induced_subforest(h, second) is g


def test_completions_are_sorted_and_distinct(P, reg):
    a, b = encode(P("a x")), encode(P("b[c]"))
    for sigma in shuffles(2, 2):
        ms = fm_sigma(a, b, sigma, reg)
        texts = [matrix_to_text(m) for m in ms]
        assert texts == sorted(texts) and len(set(texts)) == len(texts)


def test_fm_sigma_shape_guard(P, reg):
    with pytest.raises(ShapeMismatchError):
        fm_sigma(encode(P("a")), encode(P("b[c]")), Shuffle(2, 1, (1, 2, 3)), reg)


def test_quasi_completion_merges_equal_leaf_rows(P, reg):
    a, b = encode(P("x")), encode(P("a[x]"))
    got = fm_sigma_quasi(a, b, QuasiShuffle(1, 2, (2, 1, 2)), reg)
    assert got == (encode(P("a[x]")),)


def test_quasi_completion_rejects_bad_merges(P, reg):
    # different leaf decorations cannot merge
    assert fm_sigma_quasi(
        encode(P("x")), encode(P("a[y]")), QuasiShuffle(1, 2, (2, 1, 2)), reg
    ) == ()
    # internal-alphabet rows cannot merge at all
    assert fm_sigma_quasi(
        encode(P("a")), encode(P("a[x]")), QuasiShuffle(1, 2, (1, 1, 2)), reg
    ) == ()


def test_quasi_without_merge_matches_plain(P, reg):
    a, b = encode(P("a x")), encode(P("b[c]"))
    for q in quasi_shuffles(2, 2):
        if q.merges:
            continue
        s = Shuffle(2, 2, q.sigma)
        assert fm_sigma_quasi(a, b, q, reg) == fm_sigma(a, b, s, reg)


def test_fm_sigma_quasi_shape_guard(P, reg):
    with pytest.raises(ShapeMismatchError):
        fm_sigma_quasi(
            encode(P("a")), encode(P("b[c]")), QuasiShuffle(2, 1, (1, 2, 2)), reg
        )
