"""Byte-level kernels, and agreement between the two implementations."""

import os
import subprocess
import sys

import pytest

import foresthopf
from foresthopf import enumerate_forests
from foresthopf import _kernels_py as pure

compiled = pytest.importorskip(
    "foresthopf._speedups", reason="compiled extension not built"
)


def _all_keys(reg, max_weight):
    out = []
    for w in range(max_weight + 1):
        for f in enumerate_forests(w, reg):
            out.append((f.key, f.x_mask, f.weight))
    return out


# -- hand-checked cases (run against the active implementation) -------------


def test_induced_key_identity_and_empty(P):
    f = P("a[b[x y] c]")
    full = (1 << f.weight) - 1
    assert pure.induced_key(f.key, full) == f.key
    assert pure.induced_key(f.key, 0) == b""


def test_induced_key_skips_levels(P):
    f = P("a[b[x]]")
    # keep root and grandchild: x re-attaches to a
    assert pure.induced_key(f.key, 0b101) == P("a[x]").key
    assert pure.induced_key(f.key, 0b100) == P("x").key


def test_induced_key_validates_mask(P):
    f = P("a[x]")
    with pytest.raises(ValueError):
        pure.induced_key(f.key, 1 << 2)
    with pytest.raises(ValueError):
        compiled.induced_key(f.key, 1 << 2)


def test_coproduct_counts_leaves(P):
    a, x = P("a"), P("x")
    assert pure.coproduct_counts(a.key, a.x_mask) == {
        (a.key, b"", 0): 1,
        (b"", a.key, 0): 1,
    }
    # an X leaf also goes to both sides at once, picking up one power
    assert pure.coproduct_counts(x.key, x.x_mask) == {
        (x.key, b"", 0): 1,
        (b"", x.key, 0): 1,
        (x.key, x.key, 1): 1,
    }


def test_coproduct_counts_term_total(P):
    for text in ["a[x]", "x a[y]", "a[x b]", "a[b[x y] c]"]:
        f = P(text)
        counts = pure.coproduct_counts(f.key, f.x_mask)
        n, x = f.weight, f.x_count
        assert sum(counts.values()) == 2 ** (n - x) * 3**x


def test_takeuchi_counts_hand_cases(P):
    ab, ba, aa = P("a b"), P("b a"), P("a a")
    assert pure.takeuchi_counts(b"") == {b"": 1}
    assert pure.takeuchi_counts(P("a").key) == {P("a").key: -1}
    # -ab + ab + ba = ba
    assert pure.takeuchi_counts(ab.key) == {ba.key: 1}
    assert pure.takeuchi_counts(aa.key) == {aa.key: 1}


def test_size_guards(P):
    seventeen = P(" ".join(["a"] * 17))
    with pytest.raises(ValueError):
        pure.coproduct_counts(seventeen.key, 0)
    with pytest.raises(ValueError):
        pure.takeuchi_counts(seventeen.key)
    with pytest.raises(ValueError):
        compiled.coproduct_counts(seventeen.key, 0)
    with pytest.raises(ValueError):
        compiled.takeuchi_counts(seventeen.key)


def test_dict_axpy():
    acc = {"u": 2, "v": 1}
    pure.dict_axpy(acc, {"u": -2, "w": 3}, 1)
    assert acc == {"v": 1, "w": 3}
    pure.dict_axpy(acc, {"v": 5}, 0)  # no-op
    assert acc == {"v": 1, "w": 3}
    pure.dict_axpy(acc, {"v": 1}, -1)
    assert acc == {"w": 3}


def test_graded_mul_unit_and_powers(P):
    unit = {(b"", b"", 0): 1}
    t = {(P("a").key, P("x").key, 2): 3}
    assert pure.graded_mul(unit, t) == t
    assert pure.graded_mul(t, unit) == t
    assert pure.graded_mul(t, t) == {(P("a a").key, P("x x").key, 4): 9}


# -- implementation parity ---------------------------------------------------


def test_induced_key_parity(reg_small):
    for key, _, n in _all_keys(reg_small, 4):
        for mask in range(1 << n):
            assert pure.induced_key(key, mask) == compiled.induced_key(key, mask)


def test_coproduct_counts_parity(reg_small):
    for key, x_mask, _ in _all_keys(reg_small, 4):
        assert pure.coproduct_counts(key, x_mask) == compiled.coproduct_counts(
            key, x_mask
        )


def test_takeuchi_counts_parity(reg_small):
    for key, _, _ in _all_keys(reg_small, 4):
        assert pure.takeuchi_counts(key) == compiled.takeuchi_counts(key)


def test_expansion_parity(P):
    f = P("a[x b]")
    t = pure.coproduct_counts(f.key, f.x_mask)
    memo = {}
    for left, right, _ in t:
        for k in (left, right):
            if k not in memo:
                g = foresthopf.forests._forest_from_key(k)
                memo[k] = pure.coproduct_counts(k, g.x_mask)
    assert pure.expand_left(t, memo) == compiled.expand_left(t, memo)
    assert pure.expand_right(t, memo) == compiled.expand_right(t, memo)
    assert pure.graded_mul(t, t) == compiled.graded_mul(t, t)


def test_env_var_forces_pure_backend():
    env = dict(os.environ, FORESTHOPF_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "import foresthopf; print(foresthopf.KERNEL_IMPLEMENTATION)"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    assert out.stdout.strip() == "pure-python"


def test_active_backend_is_reported():
    assert foresthopf.KERNEL_IMPLEMENTATION in {"compiled", "pure-python"}
