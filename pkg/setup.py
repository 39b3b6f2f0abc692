"""Build script for the optional compiled world-set kernel.

The package is fully functional without the extension (a pure-Python
fallback is selected at import time); a failed C build therefore only
prints a warning instead of aborting the install.  Set CONDACT_PURE=1
to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping compiled kernel ({exc}); using pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); using pure-Python fallback")


ext_modules = []
if cythonize is not None and not os.environ.get("CONDACT_PURE"):
    ext_modules = cythonize(
        [Extension("condact._kernel", ["src/condact/_kernel.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "initializedcheck": False,
        },
    )

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
