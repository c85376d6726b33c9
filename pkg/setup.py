import numpy as np
from setuptools import Extension, setup
from Cython.Build import cythonize

# -ffp-contract=off: the compiled tally kernel must round every floating-point
# operation exactly like the numpy fallback, so FMA contraction is disabled.
ext = Extension(
    "interfilt._tally",
    sources=["src/interfilt/_tally.pyx"],
    include_dirs=[np.get_include()],
    extra_compile_args=["-O3", "-ffp-contract=off"],
    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
)

setup(ext_modules=cythonize([ext], language_level="3"))
