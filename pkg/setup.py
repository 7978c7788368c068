"""Build script: compiles the optional native kernel extension.

The package is fully functional without the extension (numpy fallback
kernels are selected at import time), so a missing compiler only costs
speed, not features.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Let a broken toolchain degrade to the pure-Python kernels."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, headers, ...
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"WARNING: native kernel build failed ({exc}); "
            "falling back to pure-Python kernels",
            file=sys.stderr,
        )


def extensions():
    if os.environ.get("CLUBENCH_NO_NATIVE"):
        return []
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    # -ffp-contract=off: no FMA contraction, so the native kernels produce
    # bitwise the same floats as the numpy fallbacks
    extra = [] if sys.platform == "win32" else ["-ffp-contract=off"]
    ext = Extension(
        "clubench._native",
        ["src/clubench/_native.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=extra,
    )
    return cythonize([ext], language_level="3")


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
