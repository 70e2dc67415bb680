"""Build hook: compiles the optional Cython convolution core.

The package is pure Python by default; `_conv_cy` is a drop-in replacement
for `_conv_py` selected at import time when the compiled module exists.
A failed compilation must never fail the install.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "refined_curves._conv_cy",
                ["src/refined_curves/_conv_cy.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
