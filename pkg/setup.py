"""Build script.  The compiled kernel extension is optional: if Cython (or a
C compiler) is unavailable, or LATDISC_NO_EXTENSION=1 is set, the package
installs pure-Python only and latdisc.kernels falls back at import time.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("LATDISC_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "latdisc.kernels._speedups",
                    ["src/latdisc/kernels/_speedups.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
