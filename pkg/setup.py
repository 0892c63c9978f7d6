"""Build script: compiles the simplex pivot kernel when Cython is available.

The package works without the extension (a numpy fallback is selected at
import time), so a failed extension build is not fatal.
"""

import numpy as np
from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "ccgkit.milp._kernel",
                ["src/ccgkit/milp/_kernel.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
