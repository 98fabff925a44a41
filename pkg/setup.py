import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("TORUSKT_NO_EXT"):
    ext_modules = cythonize(
        [Extension("toruskt._kernel_c", ["src/toruskt/_kernel_c.pyx"], extra_compile_args=["-O2"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
