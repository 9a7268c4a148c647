"""Backend selection for the pairwise kernel.

The compiled module is used when it imports; otherwise the numpy fallback.
Set ``SPHDESIGN_BACKEND=python`` to force the fallback or ``=cython`` to make a
missing compiled module an error.
"""
import os

from . import _pykernel

_requested = os.environ.get("SPHDESIGN_BACKEND", "").strip().lower()

_ckernel = None
if _requested != "python":
    try:
        from . import _ckernel
    except ImportError:
        if _requested == "cython":
            raise

_impl = _ckernel if _ckernel is not None else _pykernel
BACKEND = "cython" if _impl is _ckernel else "python"

kernel_value = _impl.kernel_value
kernel_value_grad = _impl.kernel_value_grad


def available_backends():
    return ["cython", "python"] if _ckernel is not None else ["python"]


def get_backend(name):
    """Module implementing ``kernel_value`` / ``kernel_value_grad`` for ``name``."""
    if name == "python":
        return _pykernel
    if name == "cython":
        if _ckernel is None:
            raise ImportError("compiled kernel is not built")
        return _ckernel
    raise ValueError(f"unknown backend {name!r}")
