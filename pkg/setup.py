"""Build script: compiles the optional dispersion-scan extension.

The package works without the extension (a pure-Python scan is selected at
import time), so any build failure here downgrades to a source-only install.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "gazekit._kernels._idt",
                ["src/gazekit/_kernels/_idt.pyx"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
