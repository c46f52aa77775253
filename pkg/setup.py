import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "convac_lab._kernels._fastcore",
        ["src/convac_lab/_kernels/_fastcore.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        # the package falls back to the numpy kernels if this fails to build
        optional=True,
    )
]

setup(
    ext_modules=cythonize(extensions, language_level="3") if cythonize else [],
)
