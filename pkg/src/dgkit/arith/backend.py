"""Pick the compiled F_p row-reduction kernel if it was built.

Set ``DGKIT_PURE_PYTHON=1`` to force the pure-Python fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
rref_modp = _kernels_py.rref_modp

if os.environ.get("DGKIT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        rref_modp = _kernels.rref_modp
        BACKEND = "cython"
