import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext
from setuptools.errors import CCompilerError, ExecError, PlatformError

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "frach._corec",
                ["src/frach/_corec.pyx"],
                extra_compile_args=["-O2", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )


class optional_build_ext(build_ext):
    """Build the compiled core when possible; the package falls back to
    the pure-Python twin at import time, so a failed build is a warning,
    not an error."""

    def run(self):
        try:
            super().run()
        except PlatformError as exc:
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except (CCompilerError, ExecError, PlatformError, OSError) as exc:
            self._skip(exc)

    def _skip(self, exc):
        print(
            f"warning: building the compiled core failed ({exc}); "
            "installing with the pure-Python backend only",
            file=sys.stderr,
        )


setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
