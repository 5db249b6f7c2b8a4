"""Selects the RK4 shooting backend at import time.

The compiled Cython kernel is used when it was built; otherwise, or when
``REVIVAL_PURE_PYTHON`` is set to a non-empty value, the numpy transfer-matrix
implementation is used.  Both expose ``integrate`` with the same contract.
"""

import os

from . import _rk4_numpy

if os.environ.get("REVIVAL_PURE_PYTHON"):
    integrate = _rk4_numpy.integrate
    BACKEND = "numpy"
else:
    try:
        from ._rk4 import integrate
    except ImportError:
        integrate = _rk4_numpy.integrate
        BACKEND = "numpy"
    else:
        BACKEND = "compiled"

__all__ = ["integrate", "BACKEND"]
