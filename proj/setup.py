"""Builds the adpssl extension module from the C++ core sources.

The canonical build is CMake (library, CLI, tests); this setup exists so the
python module can be installed with plain pip:

    pip install -e . --no-build-isolation

Eigen is located through EIGEN3_INCLUDE_DIR when set, falling back to the
usual system locations.
"""

import os
from glob import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup


def eigen_include():
    candidates = [
        os.environ.get("EIGEN3_INCLUDE_DIR"),
        "/usr/include/eigen3",
        "/usr/local/include/eigen3",
        "/opt/homebrew/include/eigen3",
    ]
    for path in candidates:
        if path and os.path.isdir(path):
            return path
    raise RuntimeError("Eigen3 headers not found; set EIGEN3_INCLUDE_DIR")


def vendor_include():
    for path in ("vendor", "/opt/vendor"):
        if os.path.isdir(path):
            return path
    return "vendor"


ext = Pybind11Extension(
    "adpssl",
    sorted(glob("src/*.cpp")) + ["bindings/pymodule.cpp"],
    include_dirs=["include", vendor_include(), eigen_include()],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
