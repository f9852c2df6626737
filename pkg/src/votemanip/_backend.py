"""Kernel backend selection: compiled extension if built, pure NumPy otherwise.

Set ``VOTEMANIP_PURE=1`` to force the fallback (used by the benchmark and the
backend-equality tests).
"""

import os

if os.environ.get("VOTEMANIP_PURE"):
    from . import _kernels_py as kernels

    COMPILED = False
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]

        COMPILED = True
    except ImportError:
        from . import _kernels_py as kernels

        COMPILED = False


def backend_name() -> str:
    return kernels.BACKEND
