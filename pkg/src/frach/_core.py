"""Numeric-backend selection.

The compiled extension is preferred; the pure-Python twin is used when it
is missing or when ``FRACH_PURE_PYTHON`` is set in the environment.
"""

from __future__ import annotations

import os

if os.environ.get("FRACH_PURE_PYTHON"):
    from frach import _corepy as backend
else:
    try:
        from frach import _corec as backend  # type: ignore[no-redef]
    except ImportError:
        from frach import _corepy as backend  # type: ignore[no-redef]

backend_name = backend.backend_name
POLE_TOL = backend.POLE_TOL
is_pole = backend.is_pole
signed_lgamma = backend.signed_lgamma
hfact = backend.hfact
left_frac_sum_values = backend.left_frac_sum_values
right_frac_sum_values = backend.right_frac_sum_values
