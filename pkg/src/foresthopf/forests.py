"""Decorated planar rooted forests.

The basic objects are planar (ordered) rooted trees whose vertices carry
decorations drawn from two disjoint alphabets:

* ``X`` decorations may appear on *leaves only*;
* ``omega`` decorations may appear anywhere (internal vertices or leaves).

A forest is a finite ordered word of such trees; the empty word is the unit
forest, printed ``1``.  Forests are built from three primitives:

* ``make_leaf(d)`` -- the single-vertex forest carrying decoration ``d``;
* ``graft(omega, f)`` -- attach all roots of ``f`` under a fresh
  ``omega``-decorated root (grafting the empty forest gives the
  single-vertex tree with that decoration);
* ``concat(f, g)`` -- juxtaposition of forests.

Vertices of a forest are listed in a canonical total order: ancestors come
before descendants, and of two vertices with no ancestry relation the one
further left comes first.  Depth-first preorder realises this order, and all
vertex-indexed operations (``vertex_table``, ``leq_h``, ``leq_r``,
``induced_subforest``) use 1-based positions in it.

Every forest is interned: structurally equal forests are the *same* Python
object, so ``==`` and ``hash`` are identity-based and cheap.  The intern key
is a compact byte string -- two bytes ``(delta, decoration_id)`` per vertex
in canonical order, where ``delta`` is 0 for a root and otherwise the
distance back to the parent's position.  Because the offsets are relative,
the key of a concatenation is the concatenation of keys; the enumeration
kernels rely on this.  All values are immutable; construction is safe under
concurrent use.
"""

from __future__ import annotations

import json
import re
import threading
from typing import Iterable, Iterator, NamedTuple

from . import kernels

__all__ = [
    "Decoration",
    "DecorationRegistry",
    "Tree",
    "Forest",
    "ForestStats",
    "VertexRow",
    "ForestHopfError",
    "RegistryError",
    "ParseError",
    "InvalidGraftError",
    "SizeLimitError",
    "EMPTY_FOREST",
    "MAX_SUBSET_VERTICES",
    "make_leaf",
    "graft",
    "concat",
    "forest_of",
    "stats",
    "vertex_table",
    "leq_h",
    "leq_r",
    "induced_subforest",
    "enumerate_forests",
    "parse_forest",
    "forest_to_text",
]


class ForestHopfError(Exception):
    """Base class for all domain errors raised by this package."""


class RegistryError(ForestHopfError, ValueError):
    """Invalid decoration registry (bad identifier, overlap, empty omega)."""


class ParseError(ForestHopfError, ValueError):
    """Malformed forest or matrix text.  ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InvalidGraftError(ForestHopfError, ValueError):
    """Attempt to give children to a leaf-only (X) decoration."""


class SizeLimitError(ForestHopfError, ValueError):
    """A size guard was exceeded (vertex-subset operations cap at 64)."""


#: Vertex-subset operations (``induced_subforest`` and everything built on
#: it) address vertices with a machine-word bitmask.
MAX_SUBSET_VERTICES = 64

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

# ---------------------------------------------------------------------------
# Interning
# ---------------------------------------------------------------------------

_lock = threading.Lock()
_DECORATIONS: dict[tuple[str, bool], "Decoration"] = {}
_DECORATION_LIST: list["Decoration"] = []
_TREES: dict[bytes, "Tree"] = {}
_FORESTS: dict[bytes, "Forest"] = {}


class Decoration:
    """An interned vertex label.

    ``is_x`` is True for leaf-only labels.  Two registries that declare the
    same name with the same kind share one ``Decoration`` object, so forests
    are comparable across registries.
    """

    __slots__ = ("name", "is_x", "index")

    name: str
    is_x: bool
    index: int  # process-global id, used in forest keys

    def __repr__(self) -> str:
        kind = "x" if self.is_x else "omega"
        return f"Decoration({self.name!r}, {kind})"


def _intern_decoration(name: str, is_x: bool) -> Decoration:
    key = (name, is_x)
    dec = _DECORATIONS.get(key)
    if dec is not None:
        return dec
    with _lock:
        dec = _DECORATIONS.get(key)
        if dec is None:
            if len(_DECORATION_LIST) >= 255:
                raise SizeLimitError("at most 255 distinct decorations are supported")
            dec = object.__new__(Decoration)
            dec.name = name
            dec.is_x = is_x
            dec.index = len(_DECORATION_LIST)
            _DECORATION_LIST.append(dec)
            _DECORATIONS[key] = dec
    return dec


class Tree:
    """A planar rooted tree: a decorated root plus an ordered forest of children.

    Obtained from ``make_leaf``/``graft``/``parse_forest``; never constructed
    directly.  Interned like forests.
    """

    __slots__ = ("decoration", "children", "weight", "depth", "key", "text")

    decoration: Decoration
    children: "Forest"
    weight: int  # number of vertices
    depth: int   # 0 for an X leaf, 1 + children depth otherwise
    key: bytes
    text: str

    def as_forest(self) -> "Forest":
        """The one-tree forest containing this tree."""
        return _forest_from_key(self.key)

    def __repr__(self) -> str:
        return f"Tree({self.text!r})"


class Forest:
    """An ordered word of trees.  Interned and immutable.

    Attribute summary (all precomputed): ``trees``, ``weight`` (vertex
    count), ``breadth`` (tree count), ``depth`` (filtration level: an
    X-leaf contributes 0, grafting adds 1, concatenation takes the max),
    ``x_count`` (number of X-decorated leaves), ``text`` (canonical printed
    form), ``key`` (intern key), ``parents``/``decorations`` (per vertex in
    canonical order; parent is a 0-based position or -1 for roots),
    ``x_mask`` (bitmask of X-decorated positions).
    """

    __slots__ = (
        "trees",
        "weight",
        "breadth",
        "depth",
        "x_count",
        "key",
        "text",
        "sort_key",
        "parents",
        "decorations",
        "x_mask",
        "_addresses",
    )

    trees: tuple[Tree, ...]
    weight: int
    breadth: int
    depth: int
    x_count: int
    key: bytes
    text: str
    sort_key: tuple[int, str]
    parents: tuple[int, ...]
    decorations: tuple[Decoration, ...]
    x_mask: int

    @property
    def is_empty(self) -> bool:
        return not self.trees

    def __iter__(self) -> Iterator[Tree]:
        return iter(self.trees)

    def __repr__(self) -> str:
        return f"Forest({self.text!r})"


def _finish_forest(key: bytes, trees: tuple[Tree, ...]) -> Forest:
    """Build and intern the Forest object for ``key`` (trees already interned)."""
    f = object.__new__(Forest)
    f.trees = trees
    f.key = key
    f.weight = sum(t.weight for t in trees)
    f.breadth = len(trees)
    f.depth = max((t.depth for t in trees), default=0)
    f.text = " ".join(t.text for t in trees) if trees else "1"
    f.sort_key = (f.weight, f.text)
    parents: list[int] = []
    decorations: list[Decoration] = []
    x_mask = 0
    pos = 0
    for i in range(0, len(key), 2):
        delta = key[i]
        parents.append(pos - delta if delta else -1)
        dec = _DECORATION_LIST[key[i + 1]]
        decorations.append(dec)
        if dec.is_x:
            x_mask |= 1 << pos
        pos += 1
    f.parents = tuple(parents)
    f.decorations = tuple(decorations)
    f.x_mask = x_mask
    f.x_count = x_mask.bit_count()
    f._addresses = None
    return _FORESTS.setdefault(key, f)


def _make_tree(dec: Decoration, children: Forest) -> Tree:
    if dec.is_x and not children.is_empty:
        raise InvalidGraftError(
            f"decoration {dec.name!r} is leaf-only and cannot take children"
        )
    # Key of the grafted tree: new root at position 0, every child-forest
    # vertex shifts by one and former roots now point at the new root.
    buf = bytearray((0, dec.index))
    ckey = children.key
    for i in range(0, len(ckey), 2):
        delta = ckey[i]
        buf.append(delta if delta else i // 2 + 1)
        buf.append(ckey[i + 1])
    key = bytes(buf)
    t = _TREES.get(key)
    if t is not None:
        return t
    t = object.__new__(Tree)
    t.decoration = dec
    t.children = children
    t.weight = 1 + children.weight
    t.depth = 0 if dec.is_x else 1 + children.depth
    t.key = key
    t.text = dec.name if children.is_empty else f"{dec.name}[{children.text}]"
    return _TREES.setdefault(key, t)


def _forest_from_key(key: bytes) -> Forest:
    """Rebuild (or intern-fetch) the forest with the given vertex key."""
    f = _FORESTS.get(key)
    if f is not None:
        return f
    trees: list[Tree] = []
    n = len(key) // 2
    start = 0
    for pos in range(1, n + 1):
        if pos == n or key[2 * pos] == 0:  # next root: close the current tree
            trees.append(_tree_from_slice(key, start, pos))
            start = pos
    return _finish_forest(key, tuple(trees))


def _tree_from_slice(key: bytes, start: int, end: int) -> Tree:
    tkey = key[2 * start : 2 * end]
    t = _TREES.get(tkey)
    if t is not None:
        return t
    dec = _DECORATION_LIST[tkey[1]]
    # Children forest: drop the root; a vertex whose parent was the root
    # (delta equal to its own within-tree position) becomes a root.
    buf = bytearray()
    for j in range(1, end - start):
        delta = tkey[2 * j]
        buf.append(0 if delta == j else delta)
        buf.append(tkey[2 * j + 1])
    return _make_tree(dec, _forest_from_key(bytes(buf)))


EMPTY_FOREST: Forest = _finish_forest(b"", ())

# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------


class DecorationRegistry:
    """The finite decoration alphabets in force for parsing and enumeration.

    ``x_names`` may be empty; ``omega_names`` may not.  The two lists must be
    disjoint, duplicate-free, and every name must be a valid identifier
    (``[A-Za-z_][A-Za-z0-9_]*``).
    """

    __slots__ = ("x", "omega", "_by_name")

    x: tuple[Decoration, ...]
    omega: tuple[Decoration, ...]

    def __init__(self, x_names: Iterable[str], omega_names: Iterable[str]):
        x_names = tuple(x_names)
        omega_names = tuple(omega_names)
        if not omega_names:
            raise RegistryError("at least one omega decoration is required")
        seen: set[str] = set()
        for name in (*x_names, *omega_names):
            if not isinstance(name, str) or not _IDENT_RE.fullmatch(name):
                raise RegistryError(f"invalid decoration identifier: {name!r}")
            if name in seen:
                raise RegistryError(f"duplicate decoration name: {name!r}")
            seen.add(name)
        self.x = tuple(_intern_decoration(n, True) for n in x_names)
        self.omega = tuple(_intern_decoration(n, False) for n in omega_names)
        self._by_name = {d.name: d for d in (*self.x, *self.omega)}

    @classmethod
    def from_json(cls, text: str) -> "DecorationRegistry":
        """Build a registry from ``{"x": [...], "omega": [...]}``."""
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise RegistryError(f"registry is not valid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise RegistryError("registry JSON must be an object")
        return cls(obj.get("x", ()), obj.get("omega", ()))

    def to_json_obj(self) -> dict:
        return {"x": [d.name for d in self.x], "omega": [d.name for d in self.omega]}

    @property
    def decorations(self) -> tuple[Decoration, ...]:
        return self.x + self.omega

    def decoration(self, name: str) -> Decoration:
        try:
            return self._by_name[name]
        except KeyError:
            raise RegistryError(f"unknown decoration: {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __repr__(self) -> str:
        return (
            f"DecorationRegistry(x={[d.name for d in self.x]}, "
            f"omega={[d.name for d in self.omega]})"
        )


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def make_leaf(dec: Decoration) -> Forest:
    """The single-vertex forest decorated by ``dec`` (any kind)."""
    return _make_tree(dec, EMPTY_FOREST).as_forest()


def graft(omega: Decoration, f: Forest) -> Tree:
    """Attach all roots of ``f`` under a fresh ``omega``-decorated root.

    ``graft(omega, EMPTY_FOREST)`` is the single-vertex tree with that
    decoration.  Raises :class:`InvalidGraftError` for an X decoration.
    """
    if omega.is_x:
        raise InvalidGraftError(
            f"decoration {omega.name!r} is leaf-only and cannot be grafted onto"
        )
    return _make_tree(omega, f)


def concat(*forests: Forest) -> Forest:
    """Juxtaposition of forests, in the given order."""
    if len(forests) == 1:
        return forests[0]
    key = b"".join(f.key for f in forests)
    got = _FORESTS.get(key)
    if got is not None:
        return got
    trees: tuple[Tree, ...] = ()
    for f in forests:
        trees += f.trees
    return _finish_forest(key, trees)


def forest_of(trees: Iterable[Tree]) -> Forest:
    """The forest with the given trees, in order."""
    ts = tuple(trees)
    key = b"".join(t.key for t in ts)
    got = _FORESTS.get(key)
    if got is not None:
        return got
    return _finish_forest(key, ts)


# ---------------------------------------------------------------------------
# Inspection
# ---------------------------------------------------------------------------


class ForestStats(NamedTuple):
    weight: int
    breadth: int
    depth: int
    x_leaves: int


class VertexRow(NamedTuple):
    index: int            # 1-based position in the canonical vertex order
    decoration: Decoration
    parent: int | None    # 1-based position of the parent, None for roots


def stats(f: Forest) -> ForestStats:
    """Weight, breadth, depth and X-leaf count of ``f``."""
    return ForestStats(f.weight, f.breadth, f.depth, f.x_count)


def vertex_table(f: Forest) -> tuple[VertexRow, ...]:
    """All vertices in canonical order, with decorations and parent links."""
    return tuple(
        VertexRow(i + 1, dec, None if par < 0 else par + 1)
        for i, (dec, par) in enumerate(zip(f.decorations, f.parents))
    )


def _addresses(f: Forest) -> tuple[tuple[int, ...], ...]:
    """Root-path address of each vertex: (tree index, child position, ...).

    Computed from the tree structure alone -- deliberately not from the
    canonical vertex numbering -- so that order predicates derived from it
    can certify that numbering independently.
    """
    if f._addresses is not None:
        return f._addresses
    out: list[tuple[int, ...]] = []

    def walk(tree: Tree, prefix: tuple[int, ...]) -> None:
        out.append(prefix)
        for i, child in enumerate(tree.children.trees):
            walk(child, prefix + (i,))

    for i, tree in enumerate(f.trees):
        walk(tree, (i,))
    f._addresses = tuple(out)
    return f._addresses


def _check_index(f: Forest, i: int) -> None:
    if not 1 <= i <= f.weight:
        raise IndexError(f"vertex index {i} out of range 1..{f.weight}")


def leq_h(f: Forest, i: int, j: int) -> bool:
    """True when vertex ``i`` lies on the root path of vertex ``j``.

    Indices are 1-based canonical positions; ``leq_h(f, i, i)`` is True.
    """
    _check_index(f, i)
    _check_index(f, j)
    addr = _addresses(f)
    ai, aj = addr[i - 1], addr[j - 1]
    return len(ai) <= len(aj) and aj[: len(ai)] == ai


def leq_r(f: Forest, i: int, j: int) -> bool:
    """True when ``i`` and ``j`` have no ancestry relation and ``j`` is further right.

    ``leq_r(f, i, i)`` is True (equality convention, matching ``leq_h``).
    """
    _check_index(f, i)
    _check_index(f, j)
    if i == j:
        return True
    addr = _addresses(f)
    ai, aj = addr[i - 1], addr[j - 1]
    k = min(len(ai), len(aj))
    if ai[:k] == aj[:k]:  # one is an ancestor of the other
        return False
    return ai < aj


def induced_subforest(f: Forest, indices: Iterable[int]) -> Forest:
    """The subforest induced by a set of 1-based vertex positions.

    Each kept vertex is re-attached to its nearest kept ancestor (or becomes
    a root if it has none); the left-to-right arrangement is inherited.  The
    empty set gives the empty forest, the full set gives ``f`` back.
    """
    if f.weight > MAX_SUBSET_VERTICES:
        raise SizeLimitError(
            f"vertex-subset operations support at most {MAX_SUBSET_VERTICES} vertices"
        )
    mask = 0
    for i in indices:
        _check_index(f, i)
        mask |= 1 << (i - 1)
    return _forest_from_key(kernels.induced_key(f.key, mask))


def _induced_by_mask(f: Forest, mask: int) -> Forest:
    return _forest_from_key(kernels.induced_key(f.key, mask))


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

_ENUM_CACHE: dict[tuple[tuple[Decoration, ...], int], tuple[Forest, ...]] = {}


def _all_forests(decs: tuple[Decoration, ...], n: int) -> tuple[Forest, ...]:
    key = (decs, n)
    got = _ENUM_CACHE.get(key)
    if got is not None:
        return got
    if n == 0:
        result: tuple[Forest, ...] = (EMPTY_FOREST,)
    else:
        omegas = [d for d in decs if not d.is_x]
        out = []
        for k in range(1, n + 1):
            if k == 1:
                heads = [make_leaf(d).trees[0] for d in decs]
            else:
                heads = [graft(w, f) for w in omegas for f in _all_forests(decs, k - 1)]
            for head in heads:
                for tail in _all_forests(decs, n - k):
                    out.append(concat(head.as_forest(), tail))
        out.sort(key=lambda f: f.text)
        result = tuple(out)
    _ENUM_CACHE[key] = result
    return result


def enumerate_forests(n: int, registry: DecorationRegistry) -> Iterator[Forest]:
    """Yield every forest of weight exactly ``n`` over the registry.

    Each forest appears exactly once, ordered by canonical printed text.
    """
    if n < 0:
        raise ValueError(f"weight must be non-negative, got {n}")
    return iter(_all_forests(registry.decorations, n))


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


def forest_to_text(f: Forest) -> str:
    """Canonical text: trees separated by single spaces, ``1`` for the unit."""
    return f.text


def parse_forest(text: str, registry: DecorationRegistry) -> Forest:
    """Parse forest text.

    Grammar::

        forest := "1" | tree (WS tree)*
        tree   := IDENT | IDENT "[" forest "]"
        IDENT  := [A-Za-z_][A-Za-z0-9_]*

    Whitespace between tokens is insignificant.  ``1`` denotes the empty
    forest and is also accepted inside brackets (``a[1]`` equals ``a``).
    Unknown decorations and children under an X decoration are rejected.
    """
    pos = 0
    n = len(text)

    def skip_ws() -> None:
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def parse_tree() -> Tree:
        nonlocal pos
        m = _IDENT_RE.match(text, pos)
        if m is None:
            raise ParseError(f"expected a decoration identifier", pos)
        name = m.group()
        if name not in registry:
            raise ParseError(f"unknown decoration {name!r}", pos)
        dec = registry.decoration(name)
        pos = m.end()
        skip_ws()
        if pos < n and text[pos] == "[":
            pos += 1
            children = parse_forest_body()
            skip_ws()
            if pos >= n or text[pos] != "]":
                raise ParseError("expected ']'", pos)
            pos += 1
            if dec.is_x and not children.is_empty:
                raise ParseError(f"decoration {name!r} is leaf-only", m.start())
            return _make_tree(dec, children)
        return _make_tree(dec, EMPTY_FOREST)

    def parse_forest_body() -> Forest:
        nonlocal pos
        skip_ws()
        if pos < n and text[pos] == "1":
            pos += 1
            return EMPTY_FOREST
        trees = [parse_tree()]
        while True:
            skip_ws()
            if pos >= n or text[pos] in "]":
                break
            if text[pos] == "1":
                raise ParseError("'1' cannot appear next to trees", pos)
            trees.append(parse_tree())
        return forest_of(trees)

    skip_ws()
    if pos == n:
        raise ParseError("empty input (use '1' for the empty forest)", pos)
    result = parse_forest_body()
    skip_ws()
    if pos != n:
        raise ParseError(f"unexpected character {text[pos]!r}", pos)
    return result
