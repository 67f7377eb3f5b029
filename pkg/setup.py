from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension("descent.kernels._core", ["src/descent/kernels/_core.pyx"]),
]

setup(ext_modules=cythonize(extensions, language_level="3"))
