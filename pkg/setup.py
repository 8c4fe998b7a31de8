"""Build script: compiles the optional DPLL extension when Cython is present.

The package is fully functional without the extension (pure-Python fallback
selected at import); the build therefore degrades gracefully instead of
failing when Cython or a C compiler is missing.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize
except ImportError:
    pass
else:
    ext_modules = cythonize(
        [
            Extension(
                "posskb.sat._core",
                ["src/posskb/sat/_core.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
