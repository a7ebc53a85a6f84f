"""Build script: compiles the optional fast-kernel extension when Cython is
available.  The package works without it (pure-Python kernels are selected at
import time), so any build failure here downgrades to a source-only install.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/minkplane/_kernels/_speedups.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"minkplane: skipping compiled kernels ({exc!r})")

setup(ext_modules=ext_modules)
