import os

from setuptools import setup

ext_modules = []
if not os.environ.get("FORGE_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(["src/forge/_ckernel.pyx"], language_level=3)

setup(ext_modules=ext_modules)
