from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension("pixtile._growth", ["src/pixtile/_growth.pyx"]),
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
