"""Build script: compiles the optional exact-arithmetic speedup extension.

The package works without the extension (pure-Python kernels are selected
at import time); building it just makes exact simplex pivoting and sparse
elimination faster.  ``pip install -e . --no-build-isolation`` builds it
when a C compiler and Cython are present.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "lfbounds.lp._speedups",
                sources=["src/lfbounds/lp/_speedups.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
