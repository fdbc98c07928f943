"""Backend selection for the numeric kernels.

The compiled extension is preferred when it was built; otherwise the
pure numpy implementation is used.  ``BERGMULT_PURE=1`` forces the pure
backend (useful for benchmarking and for debugging the extension).
"""

import os

if os.environ.get("BERGMULT_PURE") == "1":
    from . import _kernels_py as _impl

    BACKEND = "pure"
else:
    try:
        from . import _kernels_cy as _impl

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "pure"

kahan_sum = _impl.kahan_sum
cauchy_product = _impl.cauchy_product
long_division = _impl.long_division
matvec = _impl.matvec
rmatvec = _impl.rmatvec
