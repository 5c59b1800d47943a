"""Pure-Python enumeration kernels.

These are the inner loops behind the coproduct, the antipode and the
identity checks.  A compiled twin (``_speedups``) implements the same seven
functions; ``kernels`` picks one at import time.  Keep the two in lockstep.

Data conventions (shared with :mod:`foresthopf.forests`):

* a *forest key* is ``bytes`` with two bytes per vertex in canonical order,
  ``(delta, decoration_id)``, ``delta`` being 0 for a root and otherwise the
  distance back to the parent's position.  Keys concatenate: the key of a
  product of forests is the concatenation of their keys.
* vertex subsets are bitmasks over canonical positions (bit ``i`` is the
  vertex at position ``i``, 0-based).
* graded tensor counters are ``dict[(left_key, right_key, power), int]``
  mapping a term of a two-sided expansion to its integer coefficient, with
  ``power`` the exponent of the deformation parameter.  Zero coefficients
  are never stored.
"""

from __future__ import annotations

IMPLEMENTATION = "pure-python"

__all__ = [
    "IMPLEMENTATION",
    "induced_key",
    "coproduct_counts",
    "takeuchi_counts",
    "dict_axpy",
    "graded_mul",
    "expand_left",
    "expand_right",
]


def induced_key(key: bytes, mask: int) -> bytes:
    """Key of the subforest induced by the vertex subset ``mask``.

    Kept vertices stay in canonical order; each is re-attached to its
    nearest kept ancestor, or becomes a root if none of its ancestors is
    kept.
    """
    n = len(key) >> 1
    if n > 64:
        raise ValueError("induced_key supports at most 64 vertices")
    if mask >> n:
        raise ValueError(f"mask {mask:#x} has bits outside 0..{n - 1}")
    parent = [0] * n
    for i in range(n):
        delta = key[2 * i]
        parent[i] = i - delta if delta else -1
    newpos = [-1] * n
    out = bytearray()
    m = 0
    for i in range(n):
        if not (mask >> i) & 1:
            continue
        newpos[i] = m
        j = parent[i]
        while j >= 0 and not (mask >> j) & 1:
            j = parent[j]
        out.append(0 if j < 0 else m - newpos[j])
        out.append(key[2 * i + 1])
        m += 1
    return bytes(out)


def coproduct_counts(key: bytes, x_mask: int) -> dict[tuple[bytes, bytes, int], int]:
    """Full two-sided expansion of the deformed coproduct of one forest.

    Every vertex goes left, right, or (leaf-only vertices) both sides; a
    choice sending ``I`` left and ``J`` right (``I & J`` = the both-sides
    set ``B``) contributes the term ``(F_I, F_J)`` with one power of the
    deformation parameter per vertex in ``B``.  Returns the counter of all
    ``2**(n - x) * 3**x`` choices keyed by ``(left key, right key, power)``.
    """
    n = len(key) >> 1
    if n > 16:
        raise ValueError("coproduct expansion supports at most 16 vertices")
    full = (1 << n) - 1
    counts: dict[tuple[bytes, bytes, int], int] = {}
    for left_mask in range(full + 1):
        left = induced_key(key, left_mask)
        rest = full ^ left_mask
        bx = left_mask & x_mask
        b = bx
        while True:
            term = (left, induced_key(key, rest | b), b.bit_count())
            counts[term] = counts.get(term, 0) + 1
            if b == 0:
                break
            b = (b - 1) & bx
    return counts


def takeuchi_counts(key: bytes) -> dict[bytes, int]:
    """Signed counter of concatenations over ordered set partitions.

    Each ordered partition of the vertex set into ``k`` nonempty blocks
    ``(I_1, ..., I_k)`` contributes ``(-1)**k`` to the concatenated key of
    ``F_{I_1} ... F_{I_k}``; the empty forest contributes ``+1`` to the
    empty key.  This is the closed-form antipode of the undeformed
    coproduct.
    """
    n = len(key) >> 1
    if n > 16:
        raise ValueError("takeuchi expansion supports at most 16 vertices")
    memo: dict[int, dict[bytes, int]] = {0: {b"": 1}}

    def expand(mask: int) -> dict[bytes, int]:
        got = memo.get(mask)
        if got is not None:
            return got
        out: dict[bytes, int] = {}
        s = mask
        while s:
            block = induced_key(key, s)
            for tail_key, tail_c in expand(mask ^ s).items():
                k2 = block + tail_key
                c2 = out.get(k2, 0) - tail_c
                if c2:
                    out[k2] = c2
                elif k2 in out:
                    del out[k2]
            s = (s - 1) & mask
        memo[mask] = out
        return out

    return expand((1 << n) - 1)


def dict_axpy(acc: dict, src: dict, c: int) -> None:
    """In-place ``acc += c * src`` on integer counters, dropping zeros."""
    if c == 0:
        return
    for k, v in src.items():
        nv = acc.get(k, 0) + c * v
        if nv:
            acc[k] = nv
        elif k in acc:
            del acc[k]


def graded_mul(ta: dict, tb: dict) -> dict:
    """Product of two graded tensor counters.

    Factorwise concatenation: ``(a (x) b) * (c (x) d) = ac (x) bd``, powers
    adding.  Works directly on keys because forest keys concatenate.
    """
    out: dict = {}
    for (la, ra, pa), ca in ta.items():
        for (lb, rb, pb), cb in tb.items():
            k = (la + lb, ra + rb, pa + pb)
            nv = out.get(k, 0) + ca * cb
            if nv:
                out[k] = nv
            elif k in out:
                del out[k]
    return out


def expand_left(t: dict, delta_memo: dict) -> dict:
    """Apply a precomputed expansion to the left factor of each term.

    ``t`` is a graded tensor counter; ``delta_memo`` maps every left key
    occurring in ``t`` to its own graded tensor counter.  The result is
    keyed by ``(first, second, third, power)``.
    """
    out: dict = {}
    for (a, b, p), c in t.items():
        for (u, v, q), d in delta_memo[a].items():
            k = (u, v, b, p + q)
            nv = out.get(k, 0) + c * d
            if nv:
                out[k] = nv
            elif k in out:
                del out[k]
    return out


def expand_right(t: dict, delta_memo: dict) -> dict:
    """Mirror of :func:`expand_left`, expanding the right factor."""
    out: dict = {}
    for (a, b, p), c in t.items():
        for (u, v, q), d in delta_memo[b].items():
            k = (a, u, v, p + q)
            nv = out.get(k, 0) + c * d
            if nv:
                out[k] = nv
            elif k in out:
                del out[k]
    return out
