"""Kernel dispatch: compiled extension when available, pure Python otherwise.

The compiled module ``foresthopf._speedups`` is built at install time when a
C toolchain is present; it implements the same seven functions as
``foresthopf._kernels_py`` with identical semantics.  Set the environment
variable ``FORESTHOPF_PURE=1`` before import to force the pure-Python
implementation (used by the benchmark and the cross-implementation tests).

``IMPLEMENTATION`` names the active backend: ``"compiled"`` or
``"pure-python"``.
"""

from __future__ import annotations

import os

if os.environ.get("FORESTHOPF_PURE") == "1":
    from . import _kernels_py as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

IMPLEMENTATION: str = _impl.IMPLEMENTATION

induced_key = _impl.induced_key
coproduct_counts = _impl.coproduct_counts
takeuchi_counts = _impl.takeuchi_counts
dict_axpy = _impl.dict_axpy
graded_mul = _impl.graded_mul
expand_left = _impl.expand_left
expand_right = _impl.expand_right

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
