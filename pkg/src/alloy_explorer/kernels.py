"""Backend selection for the scan kernels.

The compiled extension is preferred when it built; the numpy fallback is
always available. Set ``ALLOY_EXPLORER_PURE=1`` to force the fallback (the
benchmark and the parity tests exercise both).
"""

from __future__ import annotations

import os

from . import _kernels_np

try:
    from . import _kernels  # type: ignore[attr-defined]
except ImportError:
    _kernels = None

if os.environ.get("ALLOY_EXPLORER_PURE") or _kernels is None:
    _impl = _kernels_np
else:
    _impl = _kernels

classify_rows = _impl.classify_rows
select_nearest = _impl.select_nearest
BACKEND: str = _impl.BACKEND


def available_backends() -> dict[str, object]:
    """Importable kernel modules keyed by backend name."""
    backends: dict[str, object] = {_kernels_np.BACKEND: _kernels_np}
    if _kernels is not None:
        backends[_kernels.BACKEND] = _kernels
    return backends
