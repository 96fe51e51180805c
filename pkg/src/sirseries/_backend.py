"""Kernel backend selection.

The compiled extension is used when it was built; set
``SIRSERIES_PURE_PYTHON=1`` to force the pure-Python kernels.
"""

import os

if os.environ.get("SIRSERIES_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as kernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as kernels
        BACKEND = "cython"
    except ImportError:
        from . import _pykernels as kernels
        BACKEND = "python"

convolve = kernels.convolve
horner = kernels.horner
dtm_recurrence = kernels.dtm_recurrence
sir_rhs = kernels.sir_rhs
rk4_sir = kernels.rk4_sir
adomian_sum = kernels.adomian_sum
