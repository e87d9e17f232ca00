from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to the pure-Python
# implementations in tritfield._kernels_py when the extension is unavailable.
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "tritfield._kernels",
                ["src/tritfield/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
