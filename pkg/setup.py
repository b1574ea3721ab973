"""Build script for the optional compiled kernels.

The package works without the extension (a pure-Python twin of every kernel
is selected at import time), so a failed build only costs speed.

    pip install -e . --no-build-isolation
"""
import os

from setuptools import setup

ext_modules = []
try:
    if not os.path.exists("src/convexdist/_core.pyx"):
        raise ImportError
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext = Extension(
        "convexdist._core",
        ["src/convexdist/_core.pyx"],
        include_dirs=[np.get_include()],
        # -ffp-contract=off keeps the C arithmetic bit-identical to the
        # pure-Python kernels (no FMA contraction).
        extra_compile_args=["-O3", "-ffp-contract=off"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    ext_modules = cythonize([ext], language_level=3)
except ImportError:
    pass

setup(ext_modules=ext_modules)
