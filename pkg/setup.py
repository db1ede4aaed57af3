import os

from setuptools import setup

ext_modules = []
if os.environ.get("MOGAMI_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/mogami/_sigcore.pyx"], language_level="3"
        )
    except ImportError:
        # The package works without the compiled kernel; signature
        # computation falls back to the pure-Python implementation.
        ext_modules = []

setup(ext_modules=ext_modules)
