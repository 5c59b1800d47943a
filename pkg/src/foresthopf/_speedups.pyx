# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels — the drop-in twin of ``_kernels_py``.

Same seven functions, same data conventions (byte-pair forest keys, vertex
bitmasks, graded tensor counters), selected by ``kernels`` at import time.
The mask walks and key building run at C level; counters stay ordinary
dicts so results are bit-identical to the pure route.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize

IMPLEMENTATION = "compiled"

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

ctypedef unsigned long long u64


cdef inline void _build_parents(const unsigned char* key, Py_ssize_t n, int* parent):
    cdef Py_ssize_t i
    cdef int delta
    for i in range(n):
        delta = key[2 * i]
        parent[i] = <int> (i - delta) if delta else -1


cdef inline Py_ssize_t _induced_into(
    const unsigned char* key,
    Py_ssize_t n,
    u64 mask,
    const int* parent,
    int* newpos,
    unsigned char* out,
):
    """Write the induced-subforest key for ``mask`` into ``out``; return its
    vertex count.  Ancestors precede descendants in canonical order, so the
    new position of every kept ancestor is already known when needed."""
    cdef Py_ssize_t i, m = 0
    cdef int j
    for i in range(n):
        if not (mask >> i) & 1:
            continue
        newpos[i] = <int> m
        j = parent[i]
        while j >= 0 and not (mask >> j) & 1:
            j = parent[j]
        out[2 * m] = 0 if j < 0 else <unsigned char> (m - newpos[j])
        out[2 * m + 1] = key[2 * i + 1]
        m += 1
    return m


cdef inline int _popcount(u64 x):
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


def induced_key(bytes key, mask) -> bytes:
    """Key of the subforest induced by the vertex subset ``mask``.

    Kept vertices stay in canonical order; each is re-attached to its
    nearest kept ancestor, or becomes a root if none of its ancestors is
    kept.
    """
    cdef Py_ssize_t n = len(key) >> 1
    if n > 64:
        raise ValueError("induced_key supports at most 64 vertices")
    if mask < 0 or (mask >> n):
        raise ValueError(f"mask {mask:#x} has bits outside 0..{n - 1}")
    cdef u64 cmask = <u64> mask
    cdef const unsigned char* k = key
    cdef int parent[64]
    cdef int newpos[64]
    cdef unsigned char buf[128]
    _build_parents(k, n, parent)
    cdef Py_ssize_t m = _induced_into(k, n, cmask, parent, newpos, buf)
    return PyBytes_FromStringAndSize(<char*> buf, 2 * m)


def coproduct_counts(bytes key, x_mask) -> dict:
    """Full two-sided expansion of the deformed coproduct of one forest.

    Every vertex goes left, right, or (leaf-only vertices) both sides; a
    choice sending ``I`` left and ``J`` right (``I & J`` = the both-sides
    set ``B``) contributes the term ``(F_I, F_J)`` with one power of the
    deformation parameter per vertex in ``B``.  Returns the counter of all
    ``2**(n - x) * 3**x`` choices keyed by ``(left key, right key, power)``.
    """
    cdef Py_ssize_t n = len(key) >> 1
    if n > 16:
        raise ValueError("coproduct expansion supports at most 16 vertices")
    cdef u64 xm = <u64> x_mask
    cdef const unsigned char* k = key
    cdef int parent[16]
    cdef int newpos[16]
    cdef unsigned char buf[32]
    cdef u64 full = ((<u64> 1) << n) - 1
    cdef u64 left_mask = 0, rest, bx, b
    cdef Py_ssize_t m
    cdef dict counts = {}
    cdef tuple term
    cdef object left, right, cur
    _build_parents(k, n, parent)
    while True:
        m = _induced_into(k, n, left_mask, parent, newpos, buf)
        left = PyBytes_FromStringAndSize(<char*> buf, 2 * m)
        rest = full ^ left_mask
        bx = left_mask & xm
        b = bx
        while True:
            m = _induced_into(k, n, rest | b, parent, newpos, buf)
            right = PyBytes_FromStringAndSize(<char*> buf, 2 * m)
            term = (left, right, _popcount(b))
            cur = counts.get(term)
            counts[term] = 1 if cur is None else cur + 1
            if b == 0:
                break
            b = (b - 1) & bx
        if left_mask == full:
            break
        left_mask += 1
    return counts


cdef dict _takeuchi_expand(
    const unsigned char* key,
    Py_ssize_t n,
    const int* parent,
    u64 mask,
    dict memo,
):
    cdef object got = memo.get(mask)
    if got is not None:
        return <dict> got
    cdef dict out = {}
    cdef u64 s = mask
    cdef int newpos[16]
    cdef unsigned char buf[32]
    cdef Py_ssize_t m
    cdef object block, k2, c2
    cdef dict tail
    while s:
        m = _induced_into(key, n, s, parent, newpos, buf)
        block = PyBytes_FromStringAndSize(<char*> buf, 2 * m)
        tail = _takeuchi_expand(key, n, parent, mask ^ s, memo)
        for tail_key, tail_c in tail.items():
            k2 = block + tail_key
            c2 = out.get(k2, 0) - tail_c
            if c2:
                out[k2] = c2
            elif k2 in out:
                del out[k2]
        s = (s - 1) & mask
    memo[mask] = out
    return out


def takeuchi_counts(bytes key) -> dict:
    """Signed counter of concatenations over ordered set partitions.

    Each ordered partition of the vertex set into ``k`` nonempty blocks
    ``(I_1, ..., I_k)`` contributes ``(-1)**k`` to the concatenated key of
    ``F_{I_1} ... F_{I_k}``; the empty forest contributes ``+1`` to the
    empty key.  This is the closed-form antipode of the undeformed
    coproduct.
    """
    cdef Py_ssize_t n = len(key) >> 1
    if n > 16:
        raise ValueError("takeuchi expansion supports at most 16 vertices")
    cdef const unsigned char* k = key
    cdef int parent[16]
    _build_parents(k, n, parent)
    cdef dict memo = {0: {b"": 1}}
    return _takeuchi_expand(k, n, parent, ((<u64> 1) << n) - 1, memo)


def dict_axpy(dict acc, dict src, c) -> None:
    """In-place ``acc += c * src`` on integer counters, dropping zeros."""
    if c == 0:
        return
    cdef object k, v, nv
    for k, v in src.items():
        nv = acc.get(k, 0) + c * v
        if nv:
            acc[k] = nv
        elif k in acc:
            del acc[k]


def graded_mul(dict ta, dict tb) -> dict:
    """Product of two graded tensor counters.

    Factorwise concatenation: ``(a (x) b) * (c (x) d) = ac (x) bd``, powers
    adding.  Works directly on keys because forest keys concatenate.
    """
    cdef dict out = {}
    cdef tuple k
    cdef object nv
    for (la, ra, pa), ca in ta.items():
        for (lb, rb, pb), cb in tb.items():
            k = (la + lb, ra + rb, pa + pb)
            nv = out.get(k, 0) + ca * cb
            if nv:
                out[k] = nv
            elif k in out:
                del out[k]
    return out


def expand_left(dict t, dict delta_memo) -> dict:
    """Apply a precomputed expansion to the left factor of each term.

    ``t`` is a graded tensor counter; ``delta_memo`` maps every left key
    occurring in ``t`` to its own graded tensor counter.  The result is
    keyed by ``(first, second, third, power)``.
    """
    cdef dict out = {}
    cdef tuple k
    cdef object nv
    for (a, b, p), c in t.items():
        for (u, v, q), d in (<dict> delta_memo[a]).items():
            k = (u, v, b, p + q)
            nv = out.get(k, 0) + c * d
            if nv:
                out[k] = nv
            elif k in out:
                del out[k]
    return out


def expand_right(dict t, dict delta_memo) -> dict:
    """Mirror of :func:`expand_left`, expanding the right factor."""
    cdef dict out = {}
    cdef tuple k
    cdef object nv
    for (a, b, p), c in t.items():
        for (u, v, q), d in (<dict> delta_memo[b]).items():
            k = (a, u, v, p + q)
            nv = out.get(k, 0) + c * d
            if nv:
                out[k] = nv
            elif k in out:
                del out[k]
    return out
