from setuptools import Extension, setup
from Cython.Build import cythonize

setup(
    ext_modules=cythonize(
        [
            Extension(
                "qcavity.kernels._cnstep",
                ["src/qcavity/kernels/_cnstep.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
)
