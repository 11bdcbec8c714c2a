import os

from setuptools import Extension, setup

# The compiled kernels are optional: without Cython (or with
# KELLERKIT_NO_EXT=1) the package installs pure Python and falls back at import.
ext_modules = []
if not os.environ.get("KELLERKIT_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("kellerkit._speedups", ["src/kellerkit/_speedups.pyx"],
                       extra_compile_args=["-O2"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
