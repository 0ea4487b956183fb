"""Builds the C++ core through CMake and drops the extension into the package.

scikit-build-core would do this natively; this shim keeps plain setuptools
working (`pip install -e . --no-build-isolation`).
"""

import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import setup
from setuptools.command.build_ext import build_ext
from setuptools.extension import Extension


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source = Path(__file__).resolve().parent
        build = source / "build-py"
        build.mkdir(exist_ok=True)
        subprocess.run(
            ["cmake", "-S", str(source), "-B", str(build),
             "-DCMAKE_BUILD_TYPE=Release",
             f"-DPython3_EXECUTABLE={sys.executable}"],
            check=True,
        )
        subprocess.run(["cmake", "--build", str(build), "--target", "_core", "-j2"], check=True)
        built = next(build.glob("_core*.so"))
        dest = Path(self.get_ext_fullpath(ext.name))
        dest.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built, dest)
        if self.inplace or self.editable_mode:
            shutil.copy2(built, source / "python" / "arccount" / built.name)


setup(
    ext_modules=[CMakeExtension("arccount._core")],
    cmdclass={"build_ext": CMakeBuild},
)
