"""Build script for the optional compiled kernel extension.

The package works without the extension (a pure-NumPy fallback is selected at
import time); building it just makes the hot sampling/scoring loops faster.
"""

from setuptools import Extension, setup

import numpy


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "votemanip._kernels",
        sources=["src/votemanip/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions())
