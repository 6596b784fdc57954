"""Build the optional compiled kernels.

If Cython or a C compiler is missing the package still installs; the
pure-Python kernels in ``hypotenuse._pykernels`` are used instead.
"""
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

DIRECTIVES = {
    "language_level": "3",
    "boundscheck": False,
    "wraparound": False,
    "cdivision": True,
    "initializedcheck": False,
    "embedsignature": True,
}


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled kernels not built ({exc}); "
                  "falling back to pure Python", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: failed to build {ext.name} ({exc})", file=sys.stderr)


try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "hypotenuse._ckernels",
                ["src/hypotenuse/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives=DIRECTIVES,
    )

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
