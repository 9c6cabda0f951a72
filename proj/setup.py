"""Build the pybind11 extension through the project's CMake tree.

The CMake configuration stays the single source of truth for how the
C++ core is compiled; this shim only drives it and drops the resulting
module where setuptools expects it.
"""

import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        import pybind11

        source_dir = Path(__file__).parent.resolve()
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        configure = [
            "cmake",
            "-S", str(source_dir),
            "-B", str(build_dir),
            "-DCMAKE_BUILD_TYPE=Release",
            "-DEDWALK_BUILD_TESTS=OFF",
            "-DEDWALK_BUILD_PYTHON=ON",
            "-DPYBIND11_FINDPYTHON=ON",
            f"-Dpybind11_DIR={pybind11.get_cmake_dir()}",
            f"-DPython_EXECUTABLE={sys.executable}",
        ]
        if shutil.which("ninja"):
            configure += ["-G", "Ninja"]
        subprocess.run(configure, check=True)
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core"], check=True
        )

        produced = sorted((build_dir / "bindings").glob("_core.*"))
        if not produced:
            raise RuntimeError("cmake did not produce the _core extension module")
        target = Path(self.get_ext_fullpath(ext.name)).resolve()
        target.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(produced[-1], target)


setup(
    ext_modules=[CMakeExtension("edwalk._core")],
    cmdclass={"build_ext": CMakeBuild},
)
