"""Chooses the protocol-sampling backend: compiled kernel if built, NumPy otherwise.

QMATCH_MC_BACKEND overrides the choice: "cython" insists on the compiled
kernel (raising if it is missing), "numpy" forces the fallback, and "auto"
(the default) prefers the compiled kernel when importable.
"""

from __future__ import annotations

import os

from . import _mc_numpy

try:
    from . import _mc_kernel as _compiled
except ImportError:  # pragma: no cover - depends on how the package was built
    _compiled = None


class _CompiledBackend:
    BACKEND_NAME = "cython"
    if _compiled is not None:
        universal_chunk = staticmethod(_compiled.universal_chunk)
        semiclassical_chunk = staticmethod(_compiled.semiclassical_chunk)


def compiled_available() -> bool:
    return _compiled is not None


def get_backend():
    """Resolve the active backend, honoring QMATCH_MC_BACKEND at call time."""
    requested = os.environ.get("QMATCH_MC_BACKEND", "auto").strip().lower()
    if requested not in ("auto", "cython", "numpy"):
        raise ValueError("QMATCH_MC_BACKEND must be auto, cython, or numpy")
    if requested == "numpy":
        return _mc_numpy
    if requested == "cython":
        if _compiled is None:
            raise RuntimeError(
                "QMATCH_MC_BACKEND=cython but the compiled kernel is not built"
            )
        return _CompiledBackend
    return _CompiledBackend if _compiled is not None else _mc_numpy


def backend_name() -> str:
    return get_backend().BACKEND_NAME
