"""Integer kernels with a compiled fast path.

At import time this package selects the compiled extension
(latdisc.kernels._speedups, built from Cython) when it is available, and the
pure-Python reference (latdisc.kernels._pure) otherwise.  Setting the
environment variable LATDISC_PURE_KERNELS=1 forces the pure implementation
regardless.  Both implementations satisfy identical contracts and return
bit-identical results; IMPLEMENTATION reports which one is active.
"""

import os

if os.environ.get("LATDISC_PURE_KERNELS") == "1":
    from . import _pure as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pure as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION
gauss_reduce_2d = _impl.gauss_reduce_2d
lll_reduce = _impl.lll_reduce
min_norm_in_coeff_box = _impl.min_norm_in_coeff_box
rank1_dual_min_in_box = _impl.rank1_dual_min_in_box

__all__ = [
    "IMPLEMENTATION",
    "gauss_reduce_2d",
    "lll_reduce",
    "min_norm_in_coeff_box",
    "rank1_dual_min_in_box",
]
