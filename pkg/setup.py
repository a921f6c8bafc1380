import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CUNTZALG_PURE_PYTHON", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("cuntzalg._ckernels", ["src/cuntzalg/_ckernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
