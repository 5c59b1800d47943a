"""Forests as matrices, and shuffle/quasi-shuffle completion sets.

A forest with ``n`` vertices is encoded by an ``n x (n+1)`` matrix: column 0
holds the decorations in canonical vertex order, the diagonal holds ``=``,
everything below is ``0``, and the entry above the diagonal at ``(i, j)``
records how vertex ``i`` relates to vertex ``j``: ``h`` when ``i`` is an
ancestor of ``j``, ``r`` when they are unrelated (and then ``j`` sits
further right).  :func:`is_representable` decides in terms of six local
conditions (labelled ``a``-``f``) whether an arbitrary such matrix arises
from a forest, and :func:`decode` inverts :func:`encode`.

The dual products are driven by completion sets: given encoded forests
``A`` (``k`` rows) and ``B`` (``l`` rows) and a (quasi-)shuffle ``sigma``,
:func:`fm_sigma` / :func:`fm_sigma_quasi` return every representable matrix
whose ``sigma``-placed sub-blocks agree with ``A`` and ``B``.  Free cells
are filled by backtracking over ``{h, r}`` with early pattern pruning.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .forests import (
    Decoration,
    DecorationRegistry,
    EMPTY_FOREST,
    Forest,
    ForestHopfError,
    ParseError,
    Tree,
    forest_of,
    graft,
    make_leaf,
)

__all__ = [
    "MatrixEntry",
    "ForestMatrix",
    "Representability",
    "NotRepresentableError",
    "ShapeMismatchError",
    "Shuffle",
    "QuasiShuffle",
    "encode",
    "is_representable",
    "decode",
    "shuffles",
    "quasi_shuffles",
    "fm_sigma",
    "fm_sigma_quasi",
    "matrix_to_text",
    "parse_matrix",
]


class NotRepresentableError(ForestHopfError, ValueError):
    """Decode was asked for a matrix that fails a representability condition."""

    def __init__(self, condition: str, detail: str):
        super().__init__(f"matrix is not forest-representable: ({condition}) {detail}")
        self.condition = condition


class ShapeMismatchError(ForestHopfError, ValueError):
    """Completion inputs whose row counts do not match the shuffle's parts."""


class MatrixEntry(enum.Enum):
    """A non-decoration matrix cell: ``0``, ``=``, ``h`` or ``r``."""

    ZERO = "0"
    EQ = "="
    H = "h"
    R = "r"

    def __str__(self) -> str:
        return self.value


_H = MatrixEntry.H
_R = MatrixEntry.R
_EQ = MatrixEntry.EQ
_ZERO = MatrixEntry.ZERO

#: Condition (f): the allowed values of (A_ij, A_ik, A_jk) for i < j < k.
_ALLOWED_TRIPLES = frozenset(
    [(_H, _H, _H), (_H, _H, _R), (_H, _R, _R), (_R, _R, _H), (_R, _R, _R)]
)


class ForestMatrix:
    """An ``n x (n+1)`` matrix of decorations and order symbols.

    Values are immutable and hashable; a ``ForestMatrix`` need not be
    representable (completion candidates are built cell by cell).  Access
    with 1-based indices: ``entry(i, 0)`` is the row's decoration,
    ``entry(i, j)`` for ``j >= 1`` a :class:`MatrixEntry`.
    """

    __slots__ = ("n", "decorations", "entries", "_hash")

    n: int
    decorations: tuple[Decoration, ...]
    entries: tuple[tuple[MatrixEntry, ...], ...]  # n rows of n symbol columns

    def __init__(
        self,
        decorations: tuple[Decoration, ...],
        entries: tuple[tuple[MatrixEntry, ...], ...],
    ):
        n = len(decorations)
        if len(entries) != n or any(len(row) != n for row in entries):
            raise ShapeMismatchError(
                f"need {n} rows of {n} symbol entries to go with {n} decorations"
            )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "decorations", decorations)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_hash", hash((decorations, entries)))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ForestMatrix is immutable")

    def entry(self, i: int, j: int):
        """Cell at row ``i`` (1..n), column ``j`` (0..n)."""
        if not (1 <= i <= self.n and 0 <= j <= self.n):
            raise IndexError(f"cell ({i}, {j}) outside {self.n}x{self.n + 1} matrix")
        if j == 0:
            return self.decorations[i - 1]
        return self.entries[i - 1][j - 1]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n, self.n + 1)

    def row_tokens(self, i: int) -> list[str]:
        return [self.decorations[i - 1].name] + [
            e.value for e in self.entries[i - 1]
        ]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ForestMatrix):
            return NotImplemented
        return self.decorations == other.decorations and self.entries == other.entries

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"ForestMatrix({matrix_to_text(self)!r})"

    def to_json_obj(self) -> dict:
        return {"n": self.n, "rows": [self.row_tokens(i) for i in range(1, self.n + 1)]}


def matrix_to_text(m: ForestMatrix) -> str:
    """One line per row, entries space-separated; the 0-row matrix is empty text."""
    return "\n".join(" ".join(m.row_tokens(i)) for i in range(1, m.n + 1))


def parse_matrix(text: str, registry: DecorationRegistry) -> ForestMatrix:
    """Parse the matrix text format (inverse of :func:`matrix_to_text`).

    Blank lines are ignored; every row needs a registered decoration
    followed by exactly ``n`` symbols from ``0 = h r``.  Empty input gives
    the 0-row matrix.
    """
    rows = [line.split() for line in text.splitlines() if line.strip()]
    n = len(rows)
    symbols = {e.value: e for e in MatrixEntry}
    decorations: list[Decoration] = []
    entries: list[tuple[MatrixEntry, ...]] = []
    for i, tokens in enumerate(rows):
        if len(tokens) != n + 1:
            raise ParseError(
                f"matrix row {i + 1} has {len(tokens)} entries, expected {n + 1}", 0
            )
        name = tokens[0]
        if name not in registry:
            raise ParseError(f"unknown decoration {name!r} in matrix row {i + 1}", 0)
        decorations.append(registry.decoration(name))
        row = []
        for tok in tokens[1:]:
            if tok not in symbols:
                raise ParseError(
                    f"bad matrix entry {tok!r} in row {i + 1} (want 0, =, h or r)", 0
                )
            row.append(symbols[tok])
        entries.append(tuple(row))
    return ForestMatrix(tuple(decorations), tuple(entries))


# ---------------------------------------------------------------------------
# Codec
# ---------------------------------------------------------------------------


def encode(f: Forest) -> ForestMatrix:
    """The matrix of a forest; the empty forest gives the 0-row matrix."""
    n = f.weight
    ancestors = [0] * n  # bitmask of strict ancestors per vertex
    for j, p in enumerate(f.parents):
        if p >= 0:
            ancestors[j] = ancestors[p] | (1 << p)
    entries = []
    for i in range(n):
        row = [_ZERO] * i + [_EQ]
        for j in range(i + 1, n):
            row.append(_H if (ancestors[j] >> i) & 1 else _R)
        entries.append(tuple(row))
    return ForestMatrix(f.decorations, tuple(entries))


@dataclass(frozen=True)
class Representability:
    """Outcome of the representability test; truthy iff the matrix passes.

    ``condition`` is the first violated condition label ``a``-``f`` (or
    None), ``detail`` a human-readable description of the violation.
    """

    ok: bool
    condition: str | None = None
    detail: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_representable(m: ForestMatrix, registry: DecorationRegistry) -> Representability:
    """Check conditions (a)-(f) in order; report the first failure.

    (a) every column-0 entry is a registered decoration; (b) cells below
    the diagonal are ``0``; (c) the diagonal is ``=``; (d) cells above the
    diagonal are ``h`` or ``r``; (e) a leaf-only decorated row is all ``r``
    above the diagonal; (f) every triple ``i < j < k`` shows one of the
    five patterns realizable by the two vertex orders.
    """
    n = m.n
    for i in range(n):
        d = m.decorations[i]
        if d.name not in registry or registry.decoration(d.name) is not d:
            return Representability(
                False, "a", f"row {i + 1} decoration {d.name!r} is not registered"
            )
    for i in range(n):
        row = m.entries[i]
        for j in range(i):
            if row[j] is not _ZERO:
                return Representability(
                    False, "b", f"cell ({i + 1}, {j + 1}) below diagonal is {row[j]}"
                )
        if row[i] is not _EQ:
            return Representability(
                False, "c", f"diagonal cell ({i + 1}, {i + 1}) is {row[i]}"
            )
        for j in range(i + 1, n):
            if row[j] is not _H and row[j] is not _R:
                return Representability(
                    False, "d", f"cell ({i + 1}, {j + 1}) above diagonal is {row[j]}"
                )
    for i in range(n):
        if m.decorations[i].is_x:
            for j in range(i + 1, n):
                if m.entries[i][j] is not _R:
                    return Representability(
                        False,
                        "e",
                        f"leaf-only row {i + 1} has {m.entries[i][j]} at column {j + 1}",
                    )
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                triple = (m.entries[i][j], m.entries[i][k], m.entries[j][k])
                if triple not in _ALLOWED_TRIPLES:
                    return Representability(
                        False,
                        "f",
                        f"rows ({i + 1}, {j + 1}, {k + 1}) show pattern "
                        f"({triple[0]}, {triple[1]}; =, {triple[2]})",
                    )
    return Representability(True)


def decode(m: ForestMatrix, registry: DecorationRegistry) -> Forest:
    """The unique forest with this matrix.

    Vertex ``j``'s parent is its nearest ancestor, i.e. the largest ``i < j``
    with an ``h`` at ``(i, j)``; children and roots keep index order.
    Raises :class:`NotRepresentableError` when the conditions fail.
    """
    rep = is_representable(m, registry)
    if not rep:
        raise NotRepresentableError(rep.condition or "?", rep.detail or "")
    n = m.n
    children: list[list[int]] = [[] for _ in range(n)]
    roots: list[int] = []
    for j in range(n):
        parent = -1
        for i in range(j):
            if m.entries[i][j] is _H:
                parent = i
        if parent < 0:
            roots.append(j)
        else:
            children[parent].append(j)

    def build(v: int) -> Tree:
        d = m.decorations[v]
        if d.is_x:
            return make_leaf(d).trees[0]
        return graft(d, forest_of(build(c) for c in children[v]))

    return forest_of(build(v) for v in roots) if n else EMPTY_FOREST


# ---------------------------------------------------------------------------
# Shuffles
# ---------------------------------------------------------------------------


def _check_blocks_increasing(k: int, l: int, sigma: tuple[int, ...]) -> None:
    if len(sigma) != k + l:
        raise ValueError(f"sigma has {len(sigma)} values, expected {k + l}")
    for a, b in zip(sigma[:k], sigma[1:k]):
        if a >= b:
            raise ValueError(f"sigma not increasing on the first block: {sigma}")
    for a, b in zip(sigma[k:], sigma[k + 1 :]):
        if a >= b:
            raise ValueError(f"sigma not increasing on the second block: {sigma}")


@dataclass(frozen=True)
class Shuffle:
    """A permutation of ``{1..k+l}`` increasing on ``{1..k}`` and on ``{k+1..k+l}``."""

    k: int
    l: int
    sigma: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_blocks_increasing(self.k, self.l, self.sigma)
        if sorted(self.sigma) != list(range(1, self.k + self.l + 1)):
            raise ValueError(f"sigma is not a permutation of 1..{self.k + self.l}")

    def __call__(self, i: int) -> int:
        return self.sigma[i - 1]

    def __str__(self) -> str:
        return "(" + "".join(str(v) for v in self.sigma) + ")"


@dataclass(frozen=True)
class QuasiShuffle:
    """A surjection ``{1..k+l} -> {1..m}`` increasing on both blocks.

    Values may repeat only across blocks (a repeat merges one row of each
    operand); ``m = max(sigma)`` is the merged row count.
    """

    k: int
    l: int
    sigma: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_blocks_increasing(self.k, self.l, self.sigma)
        m = self.m
        if set(self.sigma) != set(range(1, m + 1)):
            raise ValueError(f"sigma is not surjective onto 1..{m}")
        # increasing blocks make within-block repeats impossible; a value may
        # appear at most once per block, hence at most twice overall
        for v in set(self.sigma):
            if self.sigma.count(v) > 2:
                raise ValueError(f"value {v} appears more than twice in sigma")

    @property
    def m(self) -> int:
        return max(self.sigma, default=0)

    @property
    def merges(self) -> int:
        """Number of merged rows, ``k + l - m``."""
        return self.k + self.l - self.m

    def __call__(self, i: int) -> int:
        return self.sigma[i - 1]

    def __str__(self) -> str:
        return "(" + "".join(str(v) for v in self.sigma) + ")"


def shuffles(k: int, l: int) -> tuple[Shuffle, ...]:
    """All ``(k, l)``-shuffles, deterministically ordered.

    The first block's image set runs in lexicographic order, so the
    identity shuffle comes first.
    """
    if k < 0 or l < 0:
        raise ValueError("part sizes must be non-negative")
    from itertools import combinations

    universe = range(1, k + l + 1)
    out = []
    for first in combinations(universe, k):
        remaining = [v for v in universe if v not in first]
        out.append(Shuffle(k, l, tuple(first) + tuple(remaining)))
    return tuple(out)


def quasi_shuffles(k: int, l: int) -> tuple[QuasiShuffle, ...]:
    """All ``(k, l)``-quasi-shuffles, deterministically ordered.

    Generated as lattice walks consuming the two blocks left to right;
    each step advances the first block, the second block, or both (a
    merge).  Bijective quasi-shuffles (no merges) correspond exactly to
    :func:`shuffles`.
    """
    if k < 0 or l < 0:
        raise ValueError("part sizes must be non-negative")
    first: list[int] = [0] * k
    second: list[int] = [0] * l
    out: list[QuasiShuffle] = []

    def walk(i: int, j: int, t: int) -> None:
        if i == k and j == l:
            out.append(QuasiShuffle(k, l, tuple(first) + tuple(second)))
            return
        if i < k:
            first[i] = t
            walk(i + 1, j, t + 1)
        if j < l:
            second[j] = t
            walk(i, j + 1, t + 1)
        if i < k and j < l:
            first[i] = t
            second[j] = t
            walk(i + 1, j + 1, t + 1)

    walk(0, 0, 1)
    return tuple(out)


# ---------------------------------------------------------------------------
# Completion sets
# ---------------------------------------------------------------------------


def _complete(
    decorations: tuple[Decoration, ...],
    fixed: dict[tuple[int, int], MatrixEntry],
) -> list[ForestMatrix]:
    """All representable matrices with the given decorations and fixed cells.

    ``fixed`` maps 0-based strictly-above-diagonal cells ``(i, j)`` to
    required symbols.  Free cells range over ``{h, r}``.  Cells are visited
    column by column, bottom row first within a column, so that when cell
    ``(i, k)`` gets its value every pattern triple ``(i, j, k)`` with
    ``i < j < k`` is fully determined and can prune immediately; the
    leaf-only condition prunes ``h`` on rows decorated from ``X``.
    """
    n = len(decorations)
    grid: list[list[MatrixEntry | None]] = [[None] * n for _ in range(n)]
    cells: list[tuple[int, int]] = [
        (i, k) for k in range(1, n) for i in range(k - 1, -1, -1)
    ]
    results: list[ForestMatrix] = []

    def admissible(i: int, k: int, value: MatrixEntry) -> bool:
        if value is _H and decorations[i].is_x:
            return False
        for j in range(i + 1, k):
            if (grid[i][j], value, grid[j][k]) not in _ALLOWED_TRIPLES:
                return False
        return True

    def fill(idx: int) -> None:
        if idx == len(cells):
            entries = tuple(
                tuple(
                    (_EQ if i == j else _ZERO if j < i else grid[i][j])
                    for j in range(n)
                )
                for i in range(n)
            )
            results.append(ForestMatrix(decorations, entries))  # type: ignore[arg-type]
            return
        i, k = cells[idx]
        want = fixed.get((i, k))
        for value in (_H, _R) if want is None else (want,):
            if admissible(i, k, value):
                grid[i][k] = value
                fill(idx + 1)
                grid[i][k] = None

    fill(0)
    return results


def _sorted_matrices(ms: list[ForestMatrix]) -> tuple[ForestMatrix, ...]:
    return tuple(sorted(ms, key=matrix_to_text))


def fm_sigma(
    a: ForestMatrix, b: ForestMatrix, sigma: Shuffle, registry: DecorationRegistry
) -> tuple[ForestMatrix, ...]:
    """Completions of ``a`` and ``b`` interleaved along the shuffle ``sigma``.

    Row ``sigma(i)`` of the result carries row ``i`` of ``a`` (for
    ``i <= k``) or row ``i-k`` of ``b``; all cells between two rows of the
    same operand are copied, the cross cells are completed to
    representability.  Results are sorted by their text form.
    """
    if sigma.k != a.n or sigma.l != b.n:
        raise ShapeMismatchError(
            f"shuffle parts ({sigma.k}, {sigma.l}) do not match matrix sizes "
            f"({a.n}, {b.n})"
        )
    k = sigma.k
    n = k + sigma.l
    decorations: list[Decoration] = [None] * n  # type: ignore[list-item]
    fixed: dict[tuple[int, int], MatrixEntry] = {}
    for i in range(1, n + 1):
        block, row = (a, i) if i <= k else (b, i - k)
        decorations[sigma(i) - 1] = block.decorations[row - 1]
        for j in range(row + 1, block.n + 1):
            other = i + (j - row)
            fixed[(sigma(i) - 1, sigma(other) - 1)] = block.entries[row - 1][j - 1]
    return _sorted_matrices(_complete(tuple(decorations), fixed))


def fm_sigma_quasi(
    a: ForestMatrix, b: ForestMatrix, sigma: QuasiShuffle, registry: DecorationRegistry
) -> tuple[ForestMatrix, ...]:
    """Completions along a quasi-shuffle; merged rows must agree on an X decoration.

    Where ``sigma`` sends a row of ``a`` and a row of ``b`` to the same
    output row, both placements apply: the decorations must be the same
    leaf-only decoration, and copied cells must not conflict.  Without
    merges this coincides with :func:`fm_sigma`.
    """
    if sigma.k != a.n or sigma.l != b.n:
        raise ShapeMismatchError(
            f"quasi-shuffle parts ({sigma.k}, {sigma.l}) do not match matrix sizes "
            f"({a.n}, {b.n})"
        )
    k = sigma.k
    n = sigma.m
    decorations: list[Decoration | None] = [None] * n
    fixed: dict[tuple[int, int], MatrixEntry] = {}
    merged = {v for v in sigma.sigma if sigma.sigma.count(v) == 2}
    for i in range(1, k + sigma.l + 1):
        block, row = (a, i) if i <= k else (b, i - k)
        dec = block.decorations[row - 1]
        t = sigma(i) - 1
        if decorations[t] is None:
            decorations[t] = dec
        elif decorations[t] is not dec:
            return ()
        if sigma(i) in merged and not dec.is_x:
            return ()
        for j in range(row + 1, block.n + 1):
            other = i + (j - row)
            cell = (t, sigma(other) - 1)
            value = block.entries[row - 1][j - 1]
            if fixed.setdefault(cell, value) is not value:
                return ()
    return _sorted_matrices(_complete(tuple(decorations), fixed))  # type: ignore[arg-type]
