import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

# The wheel compiles the core directly; -march is left at the default so
# binaries stay portable (the CMake dev build opts into -march=native).
ext = Pybind11Extension(
    "nctorus._nctorus",
    sorted(glob.glob("src/*.cpp")) + ["python/bindings.cpp"],
    include_dirs=["include", "vendor"],
    cxx_std=20,
    extra_compile_args=["-O3", "-pthread"],
    extra_link_args=["-pthread"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
