"""Sweep kernels: compiled when available, pure Python otherwise.

Set ``SKEINZ_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _sweep_py as python_kernel

compiled_kernel = None
if os.environ.get("SKEINZ_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _sweep as compiled_kernel  # type: ignore[no-redef]
    except ImportError:
        compiled_kernel = None

kernel = compiled_kernel if compiled_kernel is not None else python_kernel
KERNEL_NAME = "cython" if compiled_kernel is not None else "python"

__all__ = ["kernel", "python_kernel", "compiled_kernel", "KERNEL_NAME"]
