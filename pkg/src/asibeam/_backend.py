"""Kernel backend selection.

The compiled extension is used when importable. Setting
``ASIBEAM_BACKEND=python`` forces the NumPy kernels.
"""

import os

from . import _kernels_py

python_kernels = _kernels_py
compiled_kernels = None

try:
    from . import _kernels as compiled_kernels  # type: ignore[attr-defined]
except ImportError:
    pass

if compiled_kernels is not None and os.environ.get("ASIBEAM_BACKEND", "").lower() != "python":
    kernels = compiled_kernels
    name = "cython"
else:
    kernels = python_kernels
    name = "python"
