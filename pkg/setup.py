"""Build shim for the optional compiled special-function core.

The package works without the extension (a scipy-backed fallback is selected
at import time), so a failed compile should not kill the install.
"""

import sys

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "smearprop._specfun_core",
                ["src/smearprop/_specfun_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
else:
    print("Cython not available; building without the compiled core", file=sys.stderr)

setup(ext_modules=ext_modules)
