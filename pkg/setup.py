"""Build script: compiles the optional Cython kernel when Cython is available.

The package is fully functional without the extension; su2haar._kernel falls
back to the pure-Python twin at import time.  Set SU2HAAR_NO_EXT=1 to skip
the extension build entirely.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("SU2HAAR_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("su2haar._kernel_c", ["src/su2haar/_kernel_c.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
