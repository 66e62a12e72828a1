"""Kernel backend selection.

The compiled extension is preferred when present; the pure-Python kernels
are a drop-in fallback.  Set ``QDPULSE_BACKEND`` to ``pure``, ``compiled``
or ``auto`` (default) to override.
"""

import importlib
import os

_ENV_VAR = "QDPULSE_BACKEND"


def load_backend(name: str):
    """Load a kernel module by name ('compiled' or 'pure')."""
    if name == "compiled":
        return importlib.import_module("qdpulse._kernels")
    if name == "pure":
        return importlib.import_module("qdpulse._kernels_py")
    raise ValueError(f"unknown backend {name!r}")


def _select():
    requested = os.environ.get(_ENV_VAR, "auto").lower()
    if requested == "pure":
        return load_backend("pure"), "pure"
    if requested == "compiled":
        return load_backend("compiled"), "compiled"
    if requested != "auto":
        raise ValueError(
            f"{_ENV_VAR} must be one of auto/compiled/pure, got {requested!r}"
        )
    try:
        return load_backend("compiled"), "compiled"
    except ImportError:
        return load_backend("pure"), "pure"


_impl, BACKEND = _select()

rk4_schrodinger3 = _impl.rk4_schrodinger3
rk4_schrodinger2 = _impl.rk4_schrodinger2
rk4_density = _impl.rk4_density
chain_objective_gradient = _impl.chain_objective_gradient
