"""Build script for the optional compiled layout kernel.

The package is fully functional without the extension: genegraph.layout
falls back to a numpy kernel at import time when the compiled module is
missing, so a failed build only costs speed.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Never fail the install because a C compiler is unavailable."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, broken toolchain, ...
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        import warnings

        warnings.warn(
            f"compiled layout kernel not built ({exc!r}); "
            "falling back to the pure-Python kernel"
        )


def extensions():
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "genegraph.layout._speedup",
        ["src/genegraph/layout/_speedup.pyx"],
        include_dirs=[np.get_include()],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
