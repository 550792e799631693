"""Select the forward/MSE kernels at import time.

The compiled ``fdonet._kernels`` extension is used when it was built;
otherwise the numpy fallback. Set ``FDONET_PURE_PYTHON=1`` to force the
fallback (the benchmark and the backend-equivalence tests load both
explicitly through :func:`load_backend`).
"""
import importlib
import os

from . import _fallback


def load_backend(name: str):
    if name == "compiled":
        return importlib.import_module("fdonet._kernels")
    if name == "fallback":
        return _fallback
    raise ValueError(f"unknown kernel backend {name!r}")


def _select():
    if os.environ.get("FDONET_PURE_PYTHON", "").strip() not in ("", "0"):
        return "fallback", _fallback
    try:
        return "compiled", load_backend("compiled")
    except ImportError:
        return "fallback", _fallback


BACKEND, _impl = _select()
batch_outputs = _impl.batch_outputs
average_mse = _impl.average_mse


def compiled_available() -> bool:
    try:
        load_backend("compiled")
    except ImportError:
        return False
    return True
