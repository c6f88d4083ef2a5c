"""Build script: compiles the optional Cython kernel when possible.

The package is fully functional without the extension; mpkit._kernel falls
back to the pure-Python evaluator at import time. Set MPKIT_PURE_PYTHON=1
to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the speedup extension if we can, otherwise keep going."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping optional extension build: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name}: {exc}")


def extensions():
    if os.environ.get("MPKIT_PURE_PYTHON"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not available, building pure-Python mpkit")
        return []
    return cythonize(
        [
            Extension(
                "mpkit._kernel._speedups",
                ["src/mpkit/_kernel/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
