"""Build script for the compiled simulation kernel.

Everything declarative lives in pyproject.toml; this file only wires up the
Cython extension.  The package works without the extension (a pure-numpy
fallback is selected at import time), so a failed compile is not fatal to
development installs — but the wheel built here always carries the kernel.
"""

import numpy
from Cython.Build import cythonize
from setuptools import Extension, setup

# -ffp-contract=off: the numpy fallback must be bit-identical to this kernel,
# so FMA contraction of a*b+c (which changes the rounding) is disabled.
ext = Extension(
    "m2walk.engine._kernel",
    sources=["src/m2walk/engine/_kernel.pyx"],
    include_dirs=[numpy.get_include()],
    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    extra_compile_args=["-O3", "-ffp-contract=off"],
)

setup(ext_modules=cythonize([ext], language_level="3"))
