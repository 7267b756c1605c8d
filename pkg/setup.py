"""Build hook for the optional compiled similarity kernel.

The package is pure Python except for molforge/fingerprint/_kernel.pyx,
a popcount kernel used by bulk Tanimoto mining. If Cython or a C
compiler is unavailable the build still succeeds and the package falls
back to the pure-Python implementation at import time.
"""

from setuptools import setup

ext_modules = []
include_dirs = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/molforge/fingerprint/_kernel.pyx",
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
    include_dirs = [numpy.get_include()]
except ImportError:
    pass

setup(ext_modules=ext_modules, include_dirs=include_dirs)
