"""Build the optional Cython core. Without Cython the package installs pure-Python."""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("INERTIA_LAB_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "inertia_lab._core._jacobi",
                    ["src/inertia_lab/_core/_jacobi.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3", "-fcx-limited-range"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
