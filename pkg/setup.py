"""Build script: compiles the optional Cython speedup module.

The package is fully functional without the extension (a pure-Python
implementation of the same kernels is selected at import time), so any
failure to build it is demoted to a warning rather than an install error.
"""

import warnings

from setuptools import setup


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        warnings.warn("Cython not available; installing without the compiled kernels")
        return []
    return cythonize(
        "src/foresthopf/_speedups.pyx",
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


setup(ext_modules=_extensions())
