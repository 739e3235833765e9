"""Kernel backend selection.

The compiled extension is preferred when importable; the pure-Python twin is
the fallback.  Override with SU2HAAR_BACKEND=pure or SU2HAAR_BACKEND=c (the
latter raises if the extension is missing, so benchmarks cannot silently
compare pure against pure).
"""

from __future__ import annotations

import os

_requested = os.environ.get("SU2HAAR_BACKEND", "auto").strip().lower()

if _requested in ("auto", "", "c", "compiled"):
    try:
        from . import _kernel_c as _impl

        BACKEND = "c"
    except ImportError:
        if _requested in ("c", "compiled"):
            raise ImportError(
                "SU2HAAR_BACKEND=c requested but the compiled kernel is not built; "
                "run 'python setup.py build_ext --inplace' or reinstall"
            )
        from . import _kernel_py as _impl

        BACKEND = "pure"
elif _requested in ("pure", "py", "python"):
    from . import _kernel_py as _impl

    BACKEND = "pure"
else:
    raise ImportError(f"unknown SU2HAAR_BACKEND value: {_requested!r}")

convolve = _impl.convolve
vec_pow = _impl.vec_pow
balanced_compositions = _impl.balanced_compositions


def backend_name() -> str:
    """Name of the active kernel backend: 'c' or 'pure'."""
    return BACKEND
