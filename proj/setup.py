from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "autores._core",
    sources=[
        "src/bindings/py_module.cpp",
        "src/reduction.cpp",
        "src/asymptotics.cpp",
        "src/analysis.cpp",
        "src/csv_io.cpp",
    ],
    include_dirs=["include"],
    cxx_std=20,
    extra_compile_args=["-pthread"],
    extra_link_args=["-pthread"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
