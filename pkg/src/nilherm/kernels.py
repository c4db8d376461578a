"""Kernel backend selection.

The compiled extension is used when it imports and masks fit in 64 bits.
Set ``NILHERM_PURE_PYTHON=1`` to force the pure-Python kernels.
"""

import os

from . import _kernels_py

BACKEND = "python"
_fast = None

if not os.environ.get("NILHERM_PURE_PYTHON"):
    try:
        from . import _kernels as _fast  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _fast = None

MAX_FAST_BITS = 64


def get_kernels(nbits: int, backend: str | None = None):
    """Return the kernel module for forms using ``nbits`` mask bits."""
    name = backend or BACKEND
    if name == "cython" and _fast is not None and nbits <= MAX_FAST_BITS:
        return _fast
    if name not in ("cython", "python"):
        raise ValueError(f"unknown kernel backend {name!r}")
    return _kernels_py


def available_backends() -> list[str]:
    return ["python", "cython"] if _fast is not None else ["python"]
