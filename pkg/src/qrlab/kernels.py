"""Backend selection for the scan kernels.

The compiled extension is preferred when importable; QRLAB_PURE=1 forces the
pure-Python twin (used by the benchmark and for debugging).
"""

import os

if os.environ.get("QRLAB_PURE"):
    from qrlab import _pykernels as _impl
else:
    try:
        from qrlab import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        from qrlab import _pykernels as _impl  # type: ignore[no-redef]

BACKEND = _impl.BACKEND
gauss_flip_count = _impl.gauss_flip_count
lattice_band_counts = _impl.lattice_band_counts
trial_factor_range = _impl.trial_factor_range
