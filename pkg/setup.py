"""Build script: compiles the optional fast kernels.

The package works without the extension (a numpy fallback is selected at
import time), so a missing Cython only downgrades performance.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("ordtex._kernels._core", ["src/ordtex/_kernels/_core.pyx"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
