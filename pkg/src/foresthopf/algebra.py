"""Linear combinations of forests and the Hopf-algebraic operations.

Coefficients live in the exact polynomial ring of :mod:`foresthopf.poly`;
basis elements are interned forests.  The operations come in independent
pairs wherever the theory offers two routes, and the test suite insists the
routes agree:

* ``coproduct`` expands the deformed coproduct combinatorially (every
  vertex goes left/right, leaf-only vertices may go to both sides, one
  power of the parameter per doubled vertex); ``coproduct_recursive``
  follows the primitive-leaf / grafting-cocycle / multiplicativity
  recursion.
* ``antipode_takeuchi`` sums ``(-1)^k F_{I_1} ... F_{I_k}`` over ordered
  set partitions of the vertex set; ``antipode_recursive`` unwinds the
  convolution identity ``S(F) = -F - sum S(F') F''`` over the reduced
  coproduct.  Both exist only in the undeformed case: inputs carrying the
  parameter are rejected.
* ``star``/``star_lambda`` build the dual (quasi-)shuffle products from
  matrix completions, while ``n_count`` counts vertex-subset splittings
  directly; the duality pairing ties them to the coproduct.

The module also provides the grading-by-leaf-count scaling ``phi_lambda``
and the universal evaluation of forests into any operated algebra
(:class:`Interpretation`, :func:`evaluate`).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Callable, Iterable, Iterator, Mapping

from . import kernels
from .forests import (
    Decoration,
    DecorationRegistry,
    EMPTY_FOREST,
    Forest,
    ForestHopfError,
    SizeLimitError,
    Tree,
    _forest_from_key,
    concat,
    graft,
    make_leaf,
)
from .matrices import decode, encode, fm_sigma, fm_sigma_quasi, quasi_shuffles, shuffles
from .poly import LAMBDA, ONE, PolyLambda, IntOrPoly, ZERO

__all__ = [
    "LinComb",
    "TensorLinComb",
    "Interpretation",
    "LambdaNotZeroError",
    "InterpretationError",
    "as_lincomb",
    "product",
    "coproduct",
    "coproduct_recursive",
    "counit",
    "reduced_coproduct",
    "antipode",
    "antipode_takeuchi",
    "antipode_recursive",
    "apply_graft",
    "star",
    "star_lambda",
    "pairing",
    "pairing2",
    "n_count",
    "phi_lambda",
    "evaluate",
    "inclusion_interpretation",
    "delta_counts",
    "delta_counts_recursive",
    "antipode_counts",
    "antipode_counts_recursive",
]


class LambdaNotZeroError(ForestHopfError, ValueError):
    """An undeformed-only operation received parameter-dependent input."""


class InterpretationError(ForestHopfError, KeyError):
    """Evaluation hit a decoration the interpretation does not cover."""


# ---------------------------------------------------------------------------
# Linear combinations
# ---------------------------------------------------------------------------


def _format_coefficient(c: PolyLambda) -> tuple[str, str]:
    """Split a coefficient into (sign, printable prefix) for term rendering."""
    nonzero = [(d, v) for d, v in enumerate(c.coeffs) if v]
    if len(nonzero) == 1:
        d, v = nonzero[0]
        sign = "-" if v < 0 else "+"
        body = str(PolyLambda.monomial(d, abs(v)))
        return sign, "" if body == "1" else body + " "
    return "+", f"({c}) "


def _render_terms(pieces: Iterable[tuple[str, PolyLambda]]) -> str:
    parts: list[str] = []
    for body, c in pieces:
        sign, prefix = _format_coefficient(c)
        if not parts:
            parts.append(prefix + body if sign == "+" else f"-{prefix}{body}")
        else:
            parts.append(f" {sign} {prefix}{body}")
    return "".join(parts) if parts else "0"


class LinComb:
    """A finite linear combination of forests with polynomial coefficients.

    Treat as immutable; zero coefficients are never stored.  Supports
    ``+``, ``-``, scalar ``*`` and ``*`` as the concatenation product.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Forest, IntOrPoly] = ()):
        clean: dict[Forest, PolyLambda] = {}
        for f, c in dict(terms).items():
            p = PolyLambda.coerce(c)
            if p:
                clean[f] = p
        self._terms = clean

    @classmethod
    def zero(cls) -> "LinComb":
        return cls()

    @classmethod
    def one(cls) -> "LinComb":
        return cls({EMPTY_FOREST: 1})

    @classmethod
    def of(cls, f: Forest, c: IntOrPoly = 1) -> "LinComb":
        return cls({f: c})

    def items(self) -> Iterator[tuple[Forest, PolyLambda]]:
        """Terms in canonical order (weight, then text)."""
        return iter(sorted(self._terms.items(), key=lambda kv: kv[0].sort_key))

    def coefficient(self, f: Forest) -> PolyLambda:
        return self._terms.get(f, ZERO)

    def support(self) -> tuple[Forest, ...]:
        return tuple(f for f, _ in self.items())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "LinComb") -> "LinComb":
        out = dict(self._terms)
        for f, c in other._terms.items():
            s = out.get(f, ZERO) + c
            if s:
                out[f] = s
            elif f in out:
                del out[f]
        return LinComb(out)

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-1) * other

    def __neg__(self) -> "LinComb":
        return (-1) * self

    def __rmul__(self, scalar: IntOrPoly) -> "LinComb":
        s = PolyLambda.coerce(scalar)
        return LinComb({f: s * c for f, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, LinComb):
            return product(self, other)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinComb):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def specialize(self, value: int) -> "LinComb":
        """Substitute an integer for the deformation parameter."""
        return LinComb({f: c(value) for f, c in self._terms.items()})

    def __str__(self) -> str:
        return _render_terms((f.text, c) for f, c in self.items())

    def __repr__(self) -> str:
        return f"LinComb({self})"

    def to_json_obj(self) -> list[dict]:
        return [
            {"coeff": c.to_json_obj(), "forest": f.text} for f, c in self.items()
        ]

    @classmethod
    def from_json_obj(cls, obj: object, registry: DecorationRegistry) -> "LinComb":
        from .forests import parse_forest

        if not isinstance(obj, list):
            raise ValueError("linear-combination JSON must be a list of terms")
        terms: dict[Forest, PolyLambda] = {}
        for item in obj:
            f = parse_forest(item["forest"], registry)
            c = terms.get(f, ZERO) + PolyLambda.from_json_obj(item["coeff"])
            if c:
                terms[f] = c
        return cls(terms)


class TensorLinComb:
    """A linear combination of two-sided tensors of forests."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[Forest, Forest], IntOrPoly] = ()):
        clean: dict[tuple[Forest, Forest], PolyLambda] = {}
        for fg, c in dict(terms).items():
            p = PolyLambda.coerce(c)
            if p:
                clean[fg] = p
        self._terms = clean

    def items(self) -> Iterator[tuple[tuple[Forest, Forest], PolyLambda]]:
        # Right factor major, so F⊗1 leads and 1⊗F trails its block — the
        # customary way these expansions are written out.
        return iter(
            sorted(
                self._terms.items(),
                key=lambda kv: (kv[0][1].sort_key, kv[0][0].sort_key),
            )
        )

    def coefficient(self, left: Forest, right: Forest) -> PolyLambda:
        return self._terms.get((left, right), ZERO)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def flip(self) -> "TensorLinComb":
        """Swap the tensor factors."""
        return TensorLinComb({(r, l): c for (l, r), c in self._terms.items()})

    def __add__(self, other: "TensorLinComb") -> "TensorLinComb":
        out = dict(self._terms)
        for fg, c in other._terms.items():
            s = out.get(fg, ZERO) + c
            if s:
                out[fg] = s
            elif fg in out:
                del out[fg]
        return TensorLinComb(out)

    def __sub__(self, other: "TensorLinComb") -> "TensorLinComb":
        return self + (-1) * other

    def __rmul__(self, scalar: IntOrPoly) -> "TensorLinComb":
        s = PolyLambda.coerce(scalar)
        return TensorLinComb({fg: s * c for fg, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorLinComb):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def specialize(self, value: int) -> "TensorLinComb":
        return TensorLinComb({fg: c(value) for fg, c in self._terms.items()})

    def text(self, tensor_symbol: str = "⊗") -> str:
        return _render_terms(
            (f"{l.text}{tensor_symbol}{r.text}", c) for (l, r), c in self.items()
        )

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"TensorLinComb({self})"

    def to_json_obj(self) -> list[dict]:
        return [
            {"coeff": c.to_json_obj(), "left": l.text, "right": r.text}
            for (l, r), c in self.items()
        ]


def as_lincomb(value) -> LinComb:
    """Coerce a forest, tree or linear combination to a :class:`LinComb`."""
    if isinstance(value, LinComb):
        return value
    if isinstance(value, Forest):
        return LinComb.of(value)
    if isinstance(value, Tree):
        return LinComb.of(value.as_forest())
    raise TypeError(f"cannot treat {type(value).__name__} as a linear combination")


# ---------------------------------------------------------------------------
# Product and counter caches
# ---------------------------------------------------------------------------


def product(a, b) -> LinComb:
    """Bilinear extension of forest concatenation."""
    a, b = as_lincomb(a), as_lincomb(b)
    out: dict[Forest, PolyLambda] = {}
    for f, cf in a._terms.items():
        for g, cg in b._terms.items():
            h = concat(f, g)
            s = out.get(h, ZERO) + cf * cg
            if s:
                out[h] = s
            elif h in out:
                del out[h]
    return LinComb(out)


GradedCounter = dict  # {(left key, right key, power): int}

_DELTA_CACHE: dict[Forest, GradedCounter] = {}
_DELTA_REC_CACHE: dict[Forest, GradedCounter] = {}
_TAKEUCHI_CACHE: dict[Forest, dict] = {}
_S_REC_CACHE: dict[bytes, dict] = {}
_GRAFT_KEY_CACHE: dict[tuple[int, bytes], bytes] = {}


def delta_counts(f: Forest) -> GradedCounter:
    """Combinatorial-route coproduct counter of one forest (cached)."""
    got = _DELTA_CACHE.get(f)
    if got is None:
        got = kernels.coproduct_counts(f.key, f.x_mask)
        _DELTA_CACHE[f] = got
    return got


def _graft_key(dec: Decoration, key: bytes) -> bytes:
    ck = (dec.index, key)
    got = _GRAFT_KEY_CACHE.get(ck)
    if got is None:
        got = graft(dec, _forest_from_key(key)).key
        _GRAFT_KEY_CACHE[ck] = got
    return got


def delta_counts_recursive(f: Forest) -> GradedCounter:
    """Recursive-route coproduct counter (cached), kept independent of
    :func:`delta_counts` so the two can cross-check each other."""
    got = _DELTA_REC_CACHE.get(f)
    if got is not None:
        return got
    if f.is_empty:
        out: GradedCounter = {(b"", b"", 0): 1}
    elif f.breadth >= 2:
        out = delta_counts_recursive(f.trees[0].as_forest())
        for t in f.trees[1:]:
            out = kernels.graded_mul(out, delta_counts_recursive(t.as_forest()))
    else:
        tree = f.trees[0]
        dec = tree.decoration
        if dec.is_x:
            out = {(f.key, b"", 0): 1, (b"", f.key, 0): 1, (f.key, f.key, 1): 1}
        else:
            out = {}
            for (l, r, p), c in delta_counts_recursive(tree.children).items():
                for k2 in ((_graft_key(dec, l), r, p), (l, _graft_key(dec, r), p)):
                    out[k2] = out.get(k2, 0) + c
    _DELTA_REC_CACHE[f] = out
    return out


def antipode_counts(f: Forest) -> dict:
    """Ordered-set-partition antipode counter ``{forest key: int}`` (cached)."""
    got = _TAKEUCHI_CACHE.get(f)
    if got is None:
        got = kernels.takeuchi_counts(f.key)
        _TAKEUCHI_CACHE[f] = got
    return got


def antipode_counts_recursive(f: Forest) -> dict:
    """Convolution-recursion antipode counter (cached), the cross-check route."""
    return _s_rec(f.key)


def _s_rec(key: bytes) -> dict:
    got = _S_REC_CACHE.get(key)
    if got is not None:
        return got
    if not key:
        out = {b"": 1}
    else:
        out = {key: -1}
        f = _forest_from_key(key)
        for (l, r, p), c in delta_counts(f).items():
            if p or not l or not r:  # reduced coproduct at parameter 0
                continue
            kernels.dict_axpy(out, {sk + r: sc for sk, sc in _s_rec(l).items()}, -c)
    _S_REC_CACHE[key] = out
    return out


def _counter_to_tensor(counter: GradedCounter) -> TensorLinComb:
    terms: dict[tuple[Forest, Forest], PolyLambda] = {}
    for (l, r, p), c in counter.items():
        fg = (_forest_from_key(l), _forest_from_key(r))
        s = terms.get(fg, ZERO) + PolyLambda.monomial(p, c)
        if s:
            terms[fg] = s
        elif fg in terms:
            del terms[fg]
    return TensorLinComb(terms)


def _flat_to_lincomb(counter: dict) -> LinComb:
    return LinComb({_forest_from_key(k): c for k, c in counter.items()})


# ---------------------------------------------------------------------------
# Coproduct family
# ---------------------------------------------------------------------------


def coproduct(a) -> TensorLinComb:
    """Deformed coproduct, combinatorial route.

    On a basis forest: sum over all pairs ``(I, J)`` of vertex subsets with
    ``I ∪ J = V(F)`` and ``I ∩ J`` contained in the leaf-only vertices, of
    ``λ^{|I∩J|} F_I ⊗ F_J``; extended linearly.
    """
    a = as_lincomb(a)
    out = TensorLinComb()
    for f, c in a._terms.items():
        out = out + c * _counter_to_tensor(delta_counts(f))
    return out


def coproduct_recursive(a) -> TensorLinComb:
    """Deformed coproduct by the defining recursion.

    Leaf-only vertices are deformed-primitive (``x ⊗ 1 + 1 ⊗ x + λ x ⊗ x``),
    grafting satisfies the symmetric cocycle rule, and the coproduct is
    multiplicative over concatenation.
    """
    a = as_lincomb(a)
    out = TensorLinComb()
    for f, c in a._terms.items():
        out = out + c * _counter_to_tensor(delta_counts_recursive(f))
    return out


def counit(a) -> PolyLambda:
    """Coefficient of the empty forest."""
    return as_lincomb(a).coefficient(EMPTY_FOREST)


def reduced_coproduct(a) -> TensorLinComb:
    """Undeformed coproduct with the two trivial terms removed.

    On a basis forest ``F != 1`` this is ``Δ(F) - F⊗1 - 1⊗F`` at parameter
    0; the empty forest maps to 0.
    """
    a = as_lincomb(a)
    terms: dict[tuple[Forest, Forest], PolyLambda] = {}
    for f, c in a._terms.items():
        for (l, r, p), n in delta_counts(f).items():
            if p or not l or not r:
                continue
            fg = (_forest_from_key(l), _forest_from_key(r))
            s = terms.get(fg, ZERO) + n * c
            if s:
                terms[fg] = s
            elif fg in terms:
                del terms[fg]
    return TensorLinComb(terms)


# ---------------------------------------------------------------------------
# Antipode (undeformed case only)
# ---------------------------------------------------------------------------


def _require_constant(a: LinComb, operation: str) -> None:
    for _, c in a._terms.items():
        if c.degree > 0:
            raise LambdaNotZeroError(f"{operation} requires λ=0")


def antipode_takeuchi(a) -> LinComb:
    """Antipode via the alternating sum over ordered set partitions.

    ``S(F) = Σ (-1)^k F_{I_1} ··· F_{I_k}`` over ordered partitions of the
    vertex set into nonempty blocks; ``S(1) = 1``.  Input coefficients must
    be parameter-free.
    """
    a = as_lincomb(a)
    _require_constant(a, "antipode")
    out = LinComb()
    for f, c in a._terms.items():
        out = out + c * _flat_to_lincomb(antipode_counts(f))
    return out


def antipode_recursive(a) -> LinComb:
    """Antipode via the convolution recursion ``S(F) = -F - Σ S(F')F''``.

    The sum runs over the reduced coproduct; agreement with
    :func:`antipode_takeuchi` is a library-level theorem exercised by the
    conformance suite.
    """
    a = as_lincomb(a)
    _require_constant(a, "antipode")
    out = LinComb()
    for f, c in a._terms.items():
        out = out + c * _flat_to_lincomb(antipode_counts_recursive(f))
    return out


antipode = antipode_takeuchi


# ---------------------------------------------------------------------------
# Grafting and evaluation
# ---------------------------------------------------------------------------


def apply_graft(omega: Decoration, a) -> LinComb:
    """Linear extension of grafting under an ``omega``-decorated root."""
    a = as_lincomb(a)
    return LinComb(
        {graft(omega, f).as_forest(): c for f, c in a._terms.items()}
    )


@dataclass(frozen=True)
class Interpretation:
    """A target operated algebra: unit, product, and images of decorations.

    ``leaf_map`` sends leaf-only decoration names to target values;
    ``operator_map`` sends the other decoration names to unary operators on
    the target.  Associativity and unit laws of ``prod`` are the caller's
    responsibility.
    """

    unit: Any
    prod: Callable[[Any, Any], Any]
    leaf_map: Mapping[str, Any]
    operator_map: Mapping[str, Callable[[Any], Any]]


def evaluate(f: Forest, interp: Interpretation) -> Any:
    """The unique operated-algebra morphism determined by ``interp``.

    Empty forest to the unit, concatenation to the product, a leaf-only
    vertex to its ``leaf_map`` image, and grafting to the corresponding
    operator.
    """

    def eval_tree(t: Tree) -> Any:
        d = t.decoration
        if d.is_x:
            try:
                return interp.leaf_map[d.name]
            except KeyError:
                raise InterpretationError(
                    f"interpretation has no leaf value for {d.name!r}"
                ) from None
        try:
            op = interp.operator_map[d.name]
        except KeyError:
            raise InterpretationError(
                f"interpretation has no operator for {d.name!r}"
            ) from None
        return op(eval_forest(t.children))

    def eval_forest(g: Forest) -> Any:
        acc = interp.unit
        for t in g.trees:
            acc = interp.prod(acc, eval_tree(t))
        return acc

    return eval_forest(f)


def inclusion_interpretation(registry: DecorationRegistry) -> Interpretation:
    """The interpretation of forests inside their own linear span.

    Evaluation along it is the identity embedding — handy as a sanity
    anchor for the universal property.
    """
    return Interpretation(
        unit=LinComb.one(),
        prod=product,
        leaf_map={d.name: LinComb.of(make_leaf(d)) for d in registry.x},
        operator_map={
            d.name: (lambda a, _d=d: apply_graft(_d, a)) for d in registry.omega
        },
    )


# ---------------------------------------------------------------------------
# Dual products and pairing
# ---------------------------------------------------------------------------


def star(f: Forest, g: Forest, registry: DecorationRegistry) -> LinComb:
    """Dual shuffle product of two basis forests.

    Sums the decodes of every completion matrix over all shuffles of the
    two vertex row sets, with multiplicity.
    """
    a, b = encode(f), encode(g)
    out: dict[Forest, PolyLambda] = {}
    for sigma in shuffles(f.weight, g.weight):
        for c in fm_sigma(a, b, sigma, registry):
            h = decode(c, registry)
            out[h] = out.get(h, ZERO) + ONE
    return LinComb(out)


def star_lambda(f: Forest, g: Forest, registry: DecorationRegistry) -> LinComb:
    """Dual quasi-shuffle product; each merged row costs one parameter power."""
    a, b = encode(f), encode(g)
    out: dict[Forest, PolyLambda] = {}
    for sigma in quasi_shuffles(f.weight, g.weight):
        weight = PolyLambda.monomial(sigma.merges)
        for c in fm_sigma_quasi(a, b, sigma, registry):
            h = decode(c, registry)
            s = out.get(h, ZERO) + weight
            if s:
                out[h] = s
    return LinComb(out)


def pairing(a, b) -> PolyLambda:
    """Bilinear extension of the Kronecker pairing on basis forests."""
    a, b = as_lincomb(a), as_lincomb(b)
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    acc = ZERO
    for f, c in small._terms.items():
        d = big._terms.get(f)
        if d is not None:
            acc = acc + c * d
    return acc


def pairing2(t: TensorLinComb, u: TensorLinComb) -> PolyLambda:
    """Factorwise Kronecker pairing of two tensor combinations."""
    small, big = (t, u) if len(t) <= len(u) else (u, t)
    acc = ZERO
    for fg, c in small._terms.items():
        d = big._terms.get(fg)
        if d is not None:
            acc = acc + c * d
    return acc


def n_count(f: Forest, g: Forest, h: Forest) -> int:
    """Number of vertex subsets ``I`` of ``h`` with ``h_I = f`` and
    ``h_{complement} = g``.

    Brute force over subsets of the right size — deliberately independent
    of the matrix machinery, serving as its oracle.
    """
    if h.weight > 64:
        raise SizeLimitError("subset counting supports at most 64 vertices")
    if f.weight + g.weight != h.weight:
        return 0
    full = (1 << h.weight) - 1
    count = 0
    for positions in combinations(range(h.weight), f.weight):
        mask = 0
        for p in positions:
            mask |= 1 << p
        if (
            kernels.induced_key(h.key, mask) == f.key
            and kernels.induced_key(h.key, full ^ mask) == g.key
        ):
            count += 1
    return count


# ---------------------------------------------------------------------------
# Rescaling morphism
# ---------------------------------------------------------------------------


def phi_lambda(a, value: IntOrPoly) -> LinComb:
    """Scale each basis forest by ``value`` to the power of its leaf-only
    vertex count.

    For invertible values this is the change-of-parameter isomorphism: it
    intertwines the coproduct at parameter ``μ`` with the coproduct at
    ``value·μ``.
    """
    a = as_lincomb(a)
    v = PolyLambda.coerce(value)
    powers: dict[int, PolyLambda] = {0: ONE}

    def power(n: int) -> PolyLambda:
        got = powers.get(n)
        if got is None:
            got = power(n - 1) * v
            powers[n] = got
        return got

    return LinComb({f: power(f.x_count) * c for f, c in a._terms.items()})
