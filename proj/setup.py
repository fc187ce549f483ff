# SPDX-License-Identifier: Apache-2.0
"""CMake-driven build of the _setopt extension module and the setopt CLI.

The canonical build system is CMake (see CMakeLists.txt); this shim lets
`pip install .` produce a wheel by delegating to it. scikit-build-core would
be the natural backend, but it is not available on every mirror, so the
classic build_ext-runs-cmake pattern is used instead.
"""

import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).parent.resolve()
        build_dir = Path(self.build_temp).resolve()
        build_dir.mkdir(parents=True, exist_ok=True)

        ext_path = Path(self.get_ext_fullpath(ext.name)).resolve()
        package_dir = ext_path.parent
        package_dir.mkdir(parents=True, exist_ok=True)

        cmake_args = [
            f"-DCMAKE_BUILD_TYPE={'Debug' if self.debug else 'Release'}",
            f"-DPython_EXECUTABLE={sys.executable}",
            "-DSETOPT_BUILD_PYTHON=ON",
        ]
        subprocess.run(["cmake", "-S", str(source_dir), "-B", str(build_dir)] + cmake_args,
                       check=True)
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_setopt", "setopt", "-j"],
            check=True)

        built = list((build_dir / "python").glob("_setopt*.so"))
        if not built:
            raise RuntimeError("cmake did not produce the _setopt module")
        shutil.copy2(built[0], ext_path)

        # Place the CLI next to the extension module so the console script
        # finds it: in the wheel staging dir for regular installs and in the
        # source package for editable/inplace installs.
        cli = build_dir / "tools" / "setopt"
        if cli.exists():
            for dest in {package_dir, source_dir / "python" / "setopt"}:
                scripts = dest / "bin"
                scripts.mkdir(parents=True, exist_ok=True)
                shutil.copy2(cli, scripts / "setopt")


setup(
    packages=["setopt"],
    package_dir={"setopt": "python/setopt"},
    ext_modules=[CMakeExtension("setopt._setopt")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
