"""Hot loops behind the automaton algebra.

The implementation is chosen once, at import, from ``WITNESSLAB_BACKEND``
(``numba`` by default, ``numpy`` for the pure-numpy path). If numba cannot
be imported the numpy path is used silently.
"""

import os

from . import _numpy

BACKEND_ENV = "WITNESSLAB_BACKEND"


def _load(name):
    if name == "numpy":
        return _numpy, "numpy"
    if name != "numba":
        raise ValueError(f"{BACKEND_ENV} must be 'numba' or 'numpy', got {name!r}")
    try:
        from . import _numba
    except ImportError:
        return _numpy, "numpy"
    return _numba, "numba"


_impl, backend = _load(os.environ.get(BACKEND_ENV, "numba").strip().lower())

subset_bfs = _impl.subset_bfs
product_bfs = _impl.product_bfs
reach_bfs = _impl.reach_bfs
refine_partition = _impl.refine_partition

__all__ = ["backend", "subset_bfs", "product_bfs", "reach_bfs", "refine_partition"]
