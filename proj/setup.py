"""Builds the native extension by delegating to the project's CMake build.

CMake stays the single source of truth for sources, flags, and dependency
discovery; this file only points it at the active interpreter and drops the
resulting module (plus a copy of the shipped scenario files) where setuptools
expects package contents.
"""

import os
import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

ROOT = Path(__file__).resolve().parent


class CMakeExtension(Extension):
    def __init__(self, name: str) -> None:
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        # Directory that must end up holding ztk/_ztk*.so inside build_lib.
        ext_path = Path(self.get_ext_fullpath(ext.name)).resolve()
        pkg_dir = ext_path.parent
        pkg_dir.mkdir(parents=True, exist_ok=True)

        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        cmake_args = [
            f"-DCMAKE_BUILD_TYPE={os.environ.get('ZTK_CMAKE_BUILD_TYPE', 'Release')}",
            "-DZTK_BUILD_PYTHON=ON",
            "-DZTK_BUILD_TESTS=OFF",
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={pkg_dir}",
            f"-DPython_EXECUTABLE={sys.executable}",
        ]
        try:
            cmakedir = subprocess.check_output(
                [sys.executable, "-m", "pybind11", "--cmakedir"], text=True
            ).strip()
            cmake_args.append(f"-Dpybind11_DIR={cmakedir}")
        except (OSError, subprocess.CalledProcessError):
            pass  # fall back to whatever find_package locates

        subprocess.run(["cmake", str(ROOT), *cmake_args], cwd=build_dir, check=True)
        subprocess.run(
            ["cmake", "--build", ".", "--target", "_ztk", "--parallel"],
            cwd=build_dir,
            check=True,
        )

        # Ship the scenario files inside the package so installed wheels are
        # self-contained; editable installs read them from the checkout.
        presets_src = ROOT / "presets"
        if presets_src.is_dir() and not getattr(self, "editable_mode", False):
            shutil.copytree(presets_src, pkg_dir / "presets", dirs_exist_ok=True)


setup(
    ext_modules=[CMakeExtension("ztk._ztk")],
    cmdclass={"build_ext": CMakeBuild},
)
