"""Backend selection for the hot kernels.

The compiled Cython module is used when it imports; otherwise, or when the
environment variable ``NCBINSAR_PURE_PYTHON`` is set to a non-empty value
other than ``0``, the numpy implementation is used. ``BACKEND`` names the
active choice and :func:`get_backend` returns either module explicitly.
"""

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

__all__ = ["BACKEND", "get_backend", "soft_threshold", "db4_analyze_rows", "db4_synthesize_rows"]


def _want_pure() -> bool:
    return os.environ.get("NCBINSAR_PURE_PYTHON", "") not in ("", "0")


def get_backend(name: str | None = None):
    """Return the kernel module called ``name`` ("cython" or "python")."""
    if name is None:
        name = BACKEND
    if name == "python":
        return _pykernels
    if name == "cython":
        if _ckernels is None:
            raise ImportError("compiled kernels are not available; build with `pip install -e .`")
        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")


BACKEND = "python" if (_ckernels is None or _want_pure()) else "cython"
_active = get_backend(BACKEND)

soft_threshold = _active.soft_threshold
db4_analyze_rows = _active.db4_analyze_rows
db4_synthesize_rows = _active.db4_synthesize_rows
