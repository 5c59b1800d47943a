"""Integer polynomials in the deformation parameter.

Coefficients of forests and tensors live in ``Z[L]`` where ``L`` is the
deformation parameter of the coproduct family.  :class:`PolyLambda` is a
small immutable dense-coefficient polynomial type with exact integer
arithmetic -- enough for this package, where degrees stay tiny (bounded by
the number of leaf-decorated vertices involved).

Printing uses ``L`` for the parameter: ``0``, ``1``, ``L``, ``2L``,
``1+2L``, ``3-L+L^2``.  The JSON form is a sparse list of
``[degree, coefficient]`` pairs in increasing degree.
"""

from __future__ import annotations

from typing import Iterable, Union

__all__ = ["PolyLambda", "ZERO", "ONE", "LAMBDA", "IntOrPoly"]


def _trim(coeffs: tuple[int, ...]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return coeffs[:n]


class PolyLambda:
    """An integer polynomial in the deformation parameter ``L``.

    Immutable and hashable.  ``coeffs[d]`` is the coefficient of ``L**d``;
    trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``.
    Integers mix freely in arithmetic and comparisons.
    """

    __slots__ = ("coeffs",)

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(tuple(int(c) for c in coeffs)))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("PolyLambda is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, c: int) -> "PolyLambda":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "PolyLambda":
        if degree < 0:
            raise ValueError("degree must be non-negative")
        return cls((0,) * degree + (c,))

    @classmethod
    def coerce(cls, value: "IntOrPoly") -> "PolyLambda":
        if isinstance(value, PolyLambda):
            return value
        if isinstance(value, int):
            return cls((value,))
        raise TypeError(f"cannot treat {type(value).__name__} as a polynomial")

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree, with the convention that the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def coefficient(self, degree: int) -> int:
        return self.coeffs[degree] if 0 <= degree < len(self.coeffs) else 0

    def constant_term(self) -> int:
        return self.coefficient(0)

    def __call__(self, value: int) -> int:
        """Evaluate at an integer parameter value (Horner)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "IntOrPoly") -> "PolyLambda":
        if not isinstance(other, (PolyLambda, int)):
            return NotImplemented
        o = PolyLambda.coerce(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return PolyLambda(
            tuple(x + y for x, y in zip(a, b)) + a[len(b):]
        )

    __radd__ = __add__

    def __neg__(self) -> "PolyLambda":
        return PolyLambda(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntOrPoly") -> "PolyLambda":
        if not isinstance(other, (PolyLambda, int)):
            return NotImplemented
        return self + (-PolyLambda.coerce(other))

    def __rsub__(self, other: "IntOrPoly") -> "PolyLambda":
        if not isinstance(other, (PolyLambda, int)):
            return NotImplemented
        return PolyLambda.coerce(other) + (-self)

    def __mul__(self, other: "IntOrPoly") -> "PolyLambda":
        if not isinstance(other, (PolyLambda, int)):
            return NotImplemented
        o = PolyLambda.coerce(other)
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return PolyLambda(out)

    __rmul__ = __mul__

    # -- comparison --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PolyLambda):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _trim((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- text and JSON -----------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                var = "L" if d == 1 else f"L^{d}"
                body = var if mag == 1 else f"{mag}{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+{body}" if c > 0 else f"-{body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"PolyLambda({self})"

    def to_json_obj(self) -> list[list[int]]:
        return [[d, c] for d, c in enumerate(self.coeffs) if c]

    @classmethod
    def from_json_obj(cls, obj: object) -> "PolyLambda":
        if not isinstance(obj, list):
            raise ValueError("polynomial JSON must be a list of [degree, coeff] pairs")
        coeffs: dict[int, int] = {}
        for pair in obj:
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(v, int) for v in pair)
            ):
                raise ValueError(f"bad polynomial term: {pair!r}")
            d, c = pair
            if d < 0:
                raise ValueError(f"negative degree: {d}")
            coeffs[d] = coeffs.get(d, 0) + c
        top = max(coeffs, default=-1)
        return cls(tuple(coeffs.get(d, 0) for d in range(top + 1)))


ZERO = PolyLambda()
ONE = PolyLambda((1,))
LAMBDA = PolyLambda((0, 1))

IntOrPoly = Union[int, PolyLambda]
