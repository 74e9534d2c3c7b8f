"""Build hook for the optional compiled pivot kernel.

The package is pure Python; the Cython extension only speeds up the
simplex inner loop.  If the extension cannot be built the install still
succeeds and the solver falls back to the pure-Python row kernel.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "tapeflow._rowops",
                ["src/tapeflow/_rowops.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
