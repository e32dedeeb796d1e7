"""Regular multigraphs, random generation and edge-expansion certificates.

The edge expansion of a graph on ``m`` vertices is the minimum of
``|dS| / |S|`` over nonempty vertex subsets with ``|S| <= m/2``, where
``dS`` is the set of edges with exactly one endpoint in ``S``.  Two
certificates are offered:

* :func:`exact_expansion` enumerates every admissible subset (small graphs);
* :func:`spectral_expansion_bound` returns the one-sided Cheeger bound
  ``(d - mu2) / 2`` from the second adjacency eigenvalue.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Optional, Union

import numpy as np

from .errors import HardCutError
from .validation import check_graph, check_membership

#: Largest vertex count accepted by subset enumeration.
ENUMERATION_LIMIT = 24
#: Half-edge matchings tried before giving up on a simple connected graph.
GENERATION_RETRIES = 10_000
POWER_TOLERANCE = 1e-8
POWER_MAX_ITER = 1_000_000

EXACT = "EXACT"
SPECTRAL = "SPECTRAL"

_CHUNK_BITS = 20


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph on vertices ``0..vertex_count-1``.

    Parallel edges are kept, self-loops are rejected.  Edges are stored as
    sorted ``(u, v)`` pairs with ``u < v``, so two graphs with the same edge
    multiset compare (and hash) equal.  ``degree`` is an optional regularity
    tag that is checked on construction.
    """

    vertex_count: int
    edges: tuple = ()
    degree: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        m = int(self.vertex_count)
        if m < 1:
            raise HardCutError("INVALID_SIZE", f"vertex_count must be positive, got {m}")
        norm = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if not (0 <= u < m and 0 <= v < m):
                raise HardCutError("INVALID_EDGE", f"edge ({u}, {v}) out of range for m={m}")
            if u == v:
                raise HardCutError("SELF_LOOP", f"self-loop at vertex {u}")
            norm.append((u, v) if u < v else (v, u))
        object.__setattr__(self, "vertex_count", m)
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if self.degree is not None:
            d = int(self.degree)
            if (d * m) % 2:
                raise HardCutError("INVALID_PARITY", f"d*m = {d}*{m} is odd")
            if not np.all(self.degrees == d):
                raise HardCutError("NOT_REGULAR", f"graph tagged {d}-regular has other degrees")
            object.__setattr__(self, "degree", d)

    @property
    def edge_count(self):
        return len(self.edges)

    @cached_property
    def edge_array(self):
        arr = np.array(self.edges, dtype=np.int64).reshape(-1, 2)
        arr.flags.writeable = False
        return arr

    @cached_property
    def degrees(self):
        deg = np.bincount(self.edge_array.ravel(), minlength=self.vertex_count)
        deg.flags.writeable = False
        return deg

    def is_regular(self, d=None):
        deg = self.degrees
        if d is None:
            return bool(np.all(deg == deg[0]))
        return bool(np.all(deg == d))

    @cached_property
    def neighbor_table(self):
        """Row ``v`` lists the neighbours of ``v`` with multiplicity.

        Only defined for regular graphs; rows are sorted.
        """
        if not self.is_regular():
            raise HardCutError("NOT_REGULAR", "neighbor table needs a regular graph")
        m, d = self.vertex_count, int(self.degrees[0])
        ends = np.concatenate([self.edge_array, self.edge_array[:, ::-1]])
        order = np.lexsort((ends[:, 1], ends[:, 0]))
        table = ends[order, 1].reshape(m, d)
        table.flags.writeable = False
        return table

    def adjacency_matrix(self):
        a = np.zeros((self.vertex_count, self.vertex_count), dtype=np.int64)
        np.add.at(a, (self.edge_array[:, 0], self.edge_array[:, 1]), 1)
        return a + a.T

    @cached_property
    def components(self):
        """Component label per vertex (labels are smallest member indices)."""
        parent = list(range(self.vertex_count))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        labels = np.array([find(v) for v in range(self.vertex_count)])
        labels.flags.writeable = False
        return labels

    def is_connected(self):
        return bool(np.all(self.components == 0))


@dataclass(frozen=True)
class ExpansionCertificate:
    """Certified edge-expansion constant.

    For ``EXACT`` the witness is the minimising subset (sorted vertex
    indices); for ``SPECTRAL`` it is the certified upper estimate of the
    second adjacency eigenvalue.
    """

    constant: float
    method: str
    witness: Union[tuple, float]
    boundary: Optional[int] = None
    residual: Optional[float] = None
    iterations: Optional[int] = field(default=None, compare=False)


def complete_graph(m):
    return Multigraph(m, [(u, v) for u in range(m) for v in range(u + 1, m)])


def cycle_graph(m):
    return Multigraph(m, [(i, (i + 1) % m) for i in range(m)])


def disjoint_union(*graphs):
    edges, offset = [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.vertex_count
    return Multigraph(offset, edges)


def generate_regular(m, d=3, seed=0, max_tries=GENERATION_RETRIES):
    """Sample a simple connected ``d``-regular graph on ``m`` vertices.

    Configuration model: the ``d*m`` half-edges are matched by a uniformly
    random permutation; matchings containing a self-loop or a repeated pair,
    and disconnected outcomes, are rejected and redrawn from the same
    generator.  The result depends only on ``(m, d, seed)``.
    """
    m, d = int(m), int(d)
    if d < 1 or m < 1:
        raise HardCutError("INVALID_SIZE", f"need m >= 1 and d >= 1, got m={m}, d={d}")
    if (d * m) % 2:
        raise HardCutError("INVALID_PARITY", f"d*m = {d}*{m} is odd")
    if m < d + 1:
        raise HardCutError("INVALID_SIZE", f"a simple {d}-regular graph needs m >= {d + 1}")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(m), d)
    for _ in range(max_tries):
        pairs = rng.permutation(stubs).reshape(-1, 2)
        pairs.sort(axis=1)
        if np.any(pairs[:, 0] == pairs[:, 1]):
            continue
        if len(np.unique(pairs, axis=0)) != len(pairs):
            continue
        graph = Multigraph(m, map(tuple, pairs.tolist()), degree=d)
        if graph.is_connected():
            return graph
    raise HardCutError("GENERATION_EXHAUSTED", f"no simple connected graph after {max_tries} tries")


def edge_boundary(graph, subset):
    """Number of edges (with multiplicity) leaving ``subset``."""
    mask = check_membership(subset, graph.vertex_count)
    if graph.edge_count == 0:
        return 0
    e = graph.edge_array
    return int(np.count_nonzero(mask[e[:, 0]] != mask[e[:, 1]]))


def _iter_subset_boundaries(graph):
    """Yield ``(masks, sizes, boundaries)`` over all ``2**m`` subsets, chunked.

    Bit ``i`` of a mask is the membership of vertex ``i``.
    """
    m = graph.vertex_count
    total = 1 << m
    step = 1 << min(m, _CHUNK_BITS)
    for start in range(0, total, step):
        masks = np.arange(start, min(start + step, total), dtype=np.int64)
        sizes = np.bitwise_count(masks).astype(np.int64)
        bnd = np.zeros(masks.shape, dtype=np.int64)
        for u, v in graph.edges:
            bnd += ((masks >> u) ^ (masks >> v)) & 1
        yield masks, sizes, bnd


def lex_key(masks, m):
    """Sort key under which smaller means lexicographically smaller membership.

    The membership vector ``(x_0, ..., x_{m-1})`` is read with ``x_0`` most
    significant, i.e. the key is the bit-reversed mask.
    """
    masks = np.asarray(masks, dtype=np.int64)
    key = np.zeros(masks.shape, dtype=np.int64)
    for i in range(m):
        key |= ((masks >> i) & 1) << m - 1 - i
    return key


def mask_to_indices(mask, m):
    mask = int(mask)
    return tuple(i for i in range(m) if mask >> i & 1)


def _check_enumerable(graph):
    if graph.vertex_count > ENUMERATION_LIMIT:
        raise HardCutError(
            "TOO_LARGE", f"enumeration limited to {ENUMERATION_LIMIT} vertices, got {graph.vertex_count}"
        )


def exact_expansion(graph):
    """Exact edge expansion by enumerating every subset with ``|S| <= m/2``.

    Ties in the ratio are broken by smaller ``|S|``, then by the
    lexicographically smallest membership vector.
    """
    check_graph(graph)
    _check_enumerable(graph)
    m = graph.vertex_count
    if m < 2:
        raise HardCutError("TOO_SMALL", "expansion needs at least two vertices")
    best = None
    for masks, sizes, bnd in _iter_subset_boundaries(graph):
        keep = (sizes >= 1) & (sizes <= m // 2)
        if not keep.any():
            continue
        masks, sizes, bnd = masks[keep], sizes[keep], bnd[keep]
        # distinct ratios b/s with s <= 12, b <= 3*24 are >= 1/144 apart, so
        # the float argmin identifies the exact minimal ratio
        i0 = int(np.argmin(bnd / sizes))
        b0, s0 = bnd[i0], sizes[i0]
        tied = bnd * s0 == b0 * sizes
        smin = sizes[tied].min()
        tied &= sizes == smin
        cands = masks[tied]
        j = int(np.argmin(lex_key(cands, m)))
        key = (Fraction(int(b0), int(s0)), int(smin), int(lex_key(cands[j : j + 1], m)[0]))
        if best is None or key < best[0]:
            best = (key, int(cands[j]), int(b0 * smin // s0))
    (ratio, size, _), mask, boundary = best
    return ExpansionCertificate(
        constant=float(ratio),
        method=EXACT,
        witness=mask_to_indices(mask, m),
        boundary=boundary,
    )


@lru_cache(maxsize=128)
def _power_iteration(graph, tol, max_iter):
    table = graph.neighbor_table
    m, d = table.shape
    # strictly increasing in the index plus a generic perturbation, so the
    # start vector is never orthogonal to an eigenspace by symmetry
    x = np.arange(m, dtype=float) + 0.5 * np.random.default_rng(0).random(m)
    x -= x.mean()
    x /= np.linalg.norm(x)
    for it in range(1, max_iter + 1):
        y = x[table].sum(axis=1)
        theta = float(x @ y)
        residual = float(np.linalg.norm(y - theta * x))
        if residual <= tol:
            x.flags.writeable = False
            return theta, residual, x, it
        # shift by d keeps the spectrum on the complement of 1 in [0, 2d],
        # so the iteration converges to the largest algebraic eigenvalue
        x = y + d * x
        x -= x.mean()
        x /= np.linalg.norm(x)
    raise HardCutError("NO_CONVERGENCE", f"power iteration residual {residual:.3g} after {max_iter} steps")


def second_eigenpair(graph, tol=POWER_TOLERANCE, max_iter=POWER_MAX_ITER):
    """Second-largest adjacency eigenvalue and an eigenvector of a regular graph.

    Power iteration on ``A + d*I`` restricted to the orthogonal complement of
    the all-ones vector.  Returns ``(rayleigh_quotient, residual, vector,
    iterations)``; the vector has unit norm and zero mean.
    """
    check_graph(graph)
    if not graph.is_regular():
        raise HardCutError("NOT_REGULAR", "spectral routines need a regular graph")
    if not graph.is_connected():
        raise HardCutError("NOT_CONNECTED", "spectral routines need a connected graph")
    if graph.vertex_count < 2:
        raise HardCutError("TOO_SMALL", "need at least two vertices")
    return _power_iteration(graph, tol, max_iter)


def spectral_expansion_bound(graph, tol=POWER_TOLERANCE, max_iter=POWER_MAX_ITER):
    """Cheeger lower bound ``(d - mu2) / 2`` on the edge expansion.

    The Rayleigh quotient from power iteration never exceeds the true
    ``mu2``; adding the final residual gives an upper estimate of ``mu2``
    (exact up to the residual once the iteration has converged), which keeps
    the certified constant on the safe side.
    """
    theta, residual, _, iterations = second_eigenpair(graph, tol, max_iter)
    d = int(graph.degrees[0])
    mu2 = theta + residual
    return ExpansionCertificate(
        constant=max(0.0, (d - mu2) / 2.0),
        method=SPECTRAL,
        witness=mu2,
        residual=residual,
        iterations=iterations,
    )


def dumps(graph):
    """Serialize to the ``m d`` header + sorted ``u v`` lines format.

    ``d`` is the common degree for regular graphs and ``0`` otherwise.
    """
    d = int(graph.degrees[0]) if graph.edge_count and graph.is_regular() else 0
    lines = [f"{graph.vertex_count} {d}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def loads(text):
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 2:
        raise HardCutError("BAD_GRAPH_FILE", "missing 'm d' header")
    try:
        m, d = int(rows[0][0]), int(rows[0][1])
        edges = [(int(u), int(v)) for u, v in rows[1:]]
    except ValueError as exc:
        raise HardCutError("BAD_GRAPH_FILE", str(exc)) from None
    return Multigraph(m, edges, degree=d or None)


def write_graph(graph, path):
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(dumps(graph))


def read_graph(path):
    with open(path, encoding="ascii") as fh:
        return loads(fh.read())
