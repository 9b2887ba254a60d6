"""Hot-loop kernels with a numba path and a pure-numpy fallback.

The numba path is used when numba imports cleanly, unless the environment
variable ``SPECTILDE_DISABLE_NUMBA`` is set to a non-empty value other than
``0``. Both implementations stay importable (``numpy_impl``, ``numba_impl``)
so they can be benchmarked and cross-checked in one process.
"""
import os

from . import _numpy as numpy_impl

try:
    from . import _numba as numba_impl
except ImportError:  # pragma: no cover - numba is an optional speedup
    numba_impl = None

KERNEL_NAMES = (
    "close_mult",
    "enumerate_submonoids",
    "coset_union",
    "prime_violation",
    "colon_vector",
    "union_closure",
    "smallest_neighbourhoods",
    "closure_batch",
    "interior_batch",
    "limit_points_batch",
    "separated_pairs",
    "has_proper_clopen",
    "is_chain",
    "is_intersection_closed",
)


def _numba_requested():
    flag = os.environ.get("SPECTILDE_DISABLE_NUMBA", "")
    return flag in ("", "0")


BACKEND = "numba" if numba_impl is not None and _numba_requested() else "numpy"
_impl = numba_impl if BACKEND == "numba" else numpy_impl

close_mult = _impl.close_mult
enumerate_submonoids = _impl.enumerate_submonoids
coset_union = _impl.coset_union
prime_violation = _impl.prime_violation
colon_vector = _impl.colon_vector
union_closure = _impl.union_closure
smallest_neighbourhoods = _impl.smallest_neighbourhoods
closure_batch = _impl.closure_batch
interior_batch = _impl.interior_batch
limit_points_batch = _impl.limit_points_batch
separated_pairs = _impl.separated_pairs
has_proper_clopen = _impl.has_proper_clopen
is_chain = _impl.is_chain
is_intersection_closed = _impl.is_intersection_closed

__all__ = ["BACKEND", "KERNEL_NAMES", "numpy_impl", "numba_impl", *KERNEL_NAMES]
