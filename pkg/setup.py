import os

from setuptools import setup

ext_modules = []
if not os.environ.get("CARDIOTRIAGE_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext = Extension(
            "cardiotriage._kernels",
            sources=["src/cardiotriage/_kernels.pyx"],
            include_dirs=[np.get_include()],
            # no FMA contraction: results must match the pure-Python kernels bit for bit
            extra_compile_args=["-O2", "-ffp-contract=off"],
        )
        ext_modules = cythonize([ext], compiler_directives={"language_level": "3"})

setup(ext_modules=ext_modules)
