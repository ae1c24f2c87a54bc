"""Build script: compiles the optional C kernel extension.

The package works without the extension (a numpy fallback is selected at
import time); set BLOOMCLIQUE_NO_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("BLOOMCLIQUE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "bloomclique._kernels._ckernels",
                    ["src/bloomclique/_kernels/_ckernels.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
