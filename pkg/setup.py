"""Build script: compiles the optional row-reduction extension.

The package is pure Python; the compiled kernel in koszulcalc._rref_cy is a
drop-in replacement for koszulcalc._rref_py selected at import time.  Set
KOSZULCALC_NO_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("KOSZULCALC_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "koszulcalc._rref_cy",
                    ["src/koszulcalc/_rref_cy.pyx"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: install the pure-Python fallback only.
        ext_modules = []

setup(ext_modules=ext_modules)
