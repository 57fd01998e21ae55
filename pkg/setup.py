"""Build script: compiles the prime-field elimination kernel when Cython is
available.  The package works without it (pure-Python fallback in
hhcalc.sparse), so a failed extension build is tolerated."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/hhcalc/_fastelim.pyx",
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover
    print(f"warning: building without compiled kernel ({exc})")

setup(ext_modules=ext_modules)
