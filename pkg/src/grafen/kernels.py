"""Kernel backend selection.

The compiled extension ``grafen._kernels`` is used when importable; set
``GRAFEN_PURE_PYTHON=1`` to force the numpy/pure-Python twin.
"""

import os

if os.environ.get("GRAFEN_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl

        BACKEND = "compiled"
    except ImportError:  # extension not built
        from . import _pykernels as _impl

        BACKEND = "python"

tridiagonalize = _impl.tridiagonalize
tridiagonal_eigenvalues = _impl.tridiagonal_eigenvalues
symmetric_eigenvalues = _impl.symmetric_eigenvalues
attach_parents = _impl.attach_parents

__all__ = [
    "BACKEND",
    "tridiagonalize",
    "tridiagonal_eigenvalues",
    "symmetric_eigenvalues",
    "attach_parents",
]
