"""Build script for the optional compiled elimination kernel.

The package works without it: ``curvhom._backend`` falls back to the
pure-Python kernel when the extension is missing.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("curvhom._elim", ["src/curvhom/_elim.pyx"])],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
