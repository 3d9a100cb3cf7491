"""Backend dispatch for the hot numerical kernels.

NSACLAB_BACKEND selects the implementation:

  auto   (default) numba if importable, else the numpy fallback
  numba  require the jitted kernels, fail loudly if numba is missing
  numpy  force the pure-numpy reference implementations

Both backends export the same four functions with identical semantics; the
test suite cross-checks them and benchmarks/bench_kernels.py compares their
throughput.
"""

import os

_choice = os.environ.get("NSACLAB_BACKEND", "auto").strip().lower()
if _choice not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"NSACLAB_BACKEND must be one of auto|numba|numpy, got {_choice!r}")

if _choice == "numpy":
    from . import numpy_impl as impl
else:
    try:
        from . import numba_impl as impl
    except ImportError:
        if _choice == "numba":
            raise
        from . import numpy_impl as impl

backend = impl.NAME
laplacian = impl.laplacian
upwind2 = impl.upwind2
polyline_scan = impl.polyline_scan
any_self_intersection = impl.any_self_intersection

__all__ = ["backend", "laplacian", "upwind2", "polyline_scan",
           "any_self_intersection"]
