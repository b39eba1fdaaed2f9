from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; kernel.py falls back
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "homlab._ckernel",
                ["src/homlab/_ckernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
