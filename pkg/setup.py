import numpy
from setuptools import Extension, setup
from Cython.Build import cythonize

# -ffp-contract=off forbids FMA contraction so the compiled kernels round
# exactly like the numpy fallback (bitwise-identical trajectories).
extensions = [
    Extension(
        "wealthsim._kernels",
        ["src/wealthsim/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
