"""Input validation helpers, in the spirit of ``sklearn.utils.validation``."""

import numbers

import numpy as np

from .errors import HardCutError

#: Standing assumption of the construction: every epsilon must be below this.
EPSILON_CEILING = 0.01


def check_epsilon(eps, upper=EPSILON_CEILING):
    """Return ``eps`` as a float, requiring ``0 < eps < upper``."""
    if not isinstance(eps, numbers.Real) or not (0.0 < float(eps) < upper):
        raise HardCutError("EPSILON_OUT_OF_RANGE", f"need 0 < eps < {upper}, got {eps!r}")
    return float(eps)


def check_scale(n):
    if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < 1:
        raise HardCutError("NONPOSITIVE_N", f"scale n must be an integer >= 1, got {n!r}")
    return int(n)


def check_membership(membership, m):
    """Coerce a subset description into a boolean mask of length ``m``.

    Accepts a boolean array-like of length ``m`` or an iterable of vertex
    indices.  Anything carrying a ``membership`` attribute (a ``VertexCut``)
    is unwrapped first.
    """
    membership = getattr(membership, "membership", membership)
    if isinstance(membership, (set, frozenset)) or not hasattr(membership, "__len__"):
        membership = sorted(membership)
    arr = np.asarray(membership)
    if arr.dtype == bool:
        if arr.shape != (m,):
            raise HardCutError("INVALID_CUT", f"membership length {arr.shape} != ({m},)")
        return arr.copy()
    mask = np.zeros(m, dtype=bool)
    if arr.size:
        idx = arr.astype(np.int64).ravel()
        if idx.min() < 0 or idx.max() >= m:
            raise HardCutError("INVALID_CUT", "vertex index out of range")
        mask[idx] = True
    return mask


def check_graph(graph, degree=None, connected=False):
    """Validate a :class:`~hardcut.graph.Multigraph` for a downstream routine.

    ``degree`` requests d-regularity (``NOT_REGULAR`` otherwise, or
    ``NOT_THREE_REGULAR`` when ``degree == 3``); ``connected`` requests a
    single component.
    """
    from .graph import Multigraph

    if not isinstance(graph, Multigraph):
        raise TypeError(f"expected Multigraph, got {type(graph).__name__}")
    if degree is not None and not graph.is_regular(degree):
        code = "NOT_THREE_REGULAR" if degree == 3 else "NOT_REGULAR"
        raise HardCutError(code, f"graph is not {degree}-regular")
    if connected and not graph.is_connected():
        raise HardCutError("NOT_CONNECTED", "graph has more than one component")
    return graph
