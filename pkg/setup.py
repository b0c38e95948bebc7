"""Builds the optional compiled kernel; the package works without it."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("spanfactor._kernels_cy", ["src/spanfactor/_kernels_cy.pyx"],
                   optional=True)],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
