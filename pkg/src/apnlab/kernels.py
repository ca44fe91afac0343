"""Backend dispatch for the hot sweep kernels.

The compiled Cython backend (apnlab._ckernels) is preferred when it was
built; otherwise the NumPy implementations in apnlab._kernels_py are used.
Both expose the same functions with bit-identical results, so everything
downstream is backend agnostic.  Set APNLAB_BACKEND=py to force the
fallback (useful for the benchmark and for debugging).
"""

from __future__ import annotations

import os

from . import _kernels_py


def _select():
    if os.environ.get("APNLAB_BACKEND", "").lower() in ("py", "python", "numpy"):
        return _kernels_py
    try:
        from . import _ckernels
        return _ckernels
    except ImportError:
        return _kernels_py


_impl = _select()

BACKEND: str = _impl.BACKEND

build_exp_table = _impl.build_exp_table
delta_max = _impl.delta_max
walsh_value_counts = _impl.walsh_value_counts
bent_component_mask = _impl.bent_component_mask


def available_backends() -> dict[str, object]:
    """Importable backend modules keyed by name."""
    out = {_kernels_py.BACKEND: _kernels_py}
    try:
        from . import _ckernels
        out[_ckernels.BACKEND] = _ckernels
    except ImportError:
        pass
    return out
