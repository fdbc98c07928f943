import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("BERGMULT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "bergmult._kernels_cy",
                    ["src/bergmult/_kernels_cy.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # No Cython at build time: the package falls back to the pure
        # numpy kernels at import, so build the wheel without the extension.
        ext_modules = []

setup(ext_modules=ext_modules)
