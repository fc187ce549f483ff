# SPDX-License-Identifier: Apache-2.0
"""Console entry point wrapping the native setopt binary."""

import os
import subprocess
import sys


def main() -> int:
    exe = os.path.join(os.path.dirname(__file__), "bin", "setopt")
    if not os.path.exists(exe):
        sys.stderr.write("setopt: bundled binary not found; build with pip install .\n")
        return 1
    return subprocess.call([exe] + sys.argv[1:])


if __name__ == "__main__":
    raise SystemExit(main())
