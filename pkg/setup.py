from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("maxcover._speedups", ["src/maxcover/_speedups.pyx"])],
        language_level=3,
    )
except ImportError:
    # The package runs on the pure fallback kernels if Cython is unavailable.
    ext_modules = []

setup(ext_modules=ext_modules)
