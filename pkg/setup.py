import os

from setuptools import setup

ext_modules = []
if not os.environ.get("NILHERM_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("nilherm._kernels", ["src/nilherm/_kernels.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:  # Cython missing: the pure-Python kernels are used
        ext_modules = []

setup(ext_modules=ext_modules)
