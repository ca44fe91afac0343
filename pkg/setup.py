import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


def compiled_kernels():
    """Cython extension for the hot sweep kernels, if Cython is available."""
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    import numpy

    ext = Extension(
        "apnlab._ckernels",
        ["src/apnlab/_ckernels.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


class OptionalBuildExt(build_ext):
    """Build the compiled kernels when possible; the package works without
    them (apnlab.kernels falls back to the NumPy implementations)."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, broken toolchain, ...
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"warning: could not build apnlab._ckernels ({exc}); "
            "the NumPy kernel backend will be used",
            file=sys.stderr,
        )


setup(ext_modules=compiled_kernels(), cmdclass={"build_ext": OptionalBuildExt})
