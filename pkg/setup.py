"""Optional build of the compiled enumeration kernel.

Everything works without it (a pure-Python twin is selected at import
time); build it for speed with::

    pip install cython && python setup.py build_ext --inplace
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/degedit/_bruteforce.pyx",
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
