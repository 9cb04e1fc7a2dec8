"""Build script: compiles the optional Cython kernels.

The extension is a pure speedup; if Cython or a C compiler is missing the
package installs anyway and falls back to the pure-Python kernels at import.
Set TWOXOR_NO_EXT=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping C extension build ({exc!r}); "
                  "twoxor will use the pure-Python kernels")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc!r}); "
                  "twoxor will use the pure-Python kernels")


ext_modules = []
if os.environ.get("TWOXOR_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "twoxor.kernels._fast",
                    ["src/twoxor/kernels/_fast.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        print("warning: Cython not available; building without the fast kernels")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
