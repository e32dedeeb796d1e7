"""Search for minimum-area balanced binary cuts of a handlebody model.

A binary cut is balanced for ``eps`` when both sides hold more than
``eps * m`` whole cells.  Its area is the number of severed holes times the
model's cut-disc area, so every routine here minimises the edge boundary.
Ties are always resolved by ``(boundary, |S|, membership string)`` on the
canonical (smaller) side.
"""

from dataclasses import dataclass

import numpy as np

from .errors import HardCutError
from .graph import _check_enumerable, _iter_subset_boundaries, edge_boundary, lex_key, second_eigenpair
from .handlebody import VertexCut, side_volumes
from .validation import check_membership

EXACT = "EXACT"
SPECTRAL_SWEEP = "SPECTRAL_SWEEP"
LOCAL_SEARCH = "LOCAL_SEARCH"
RANDOM_RESTART = "RANDOM_RESTART"

#: Local search stops after this many applied moves per vertex.
MOVES_PER_VERTEX = 100


@dataclass(frozen=True)
class CutResult:
    cut: VertexCut
    area: float
    side_volumes: tuple
    method: str
    evaluations: int
    boundary: int

    @property
    def sort_key(self):
        return (self.boundary, self.cut.size, self.cut.to_string())

    def to_text(self):
        return (
            f"method={self.method}\n"
            f"area={self.area!r}\n"
            f"size={self.cut.size}\n"
            f"membership={self.cut.to_string()}\n"
            f"evaluations={self.evaluations}\n"
        )


def _balanced_range(m, eps):
    """Smallest and largest balanced side sizes, or NO_BALANCED_CUT."""
    if not eps > 0:
        raise HardCutError("EPSILON_OUT_OF_RANGE", f"eps must be positive, got {eps!r}")
    lo = int(np.floor(eps * m)) + 1
    hi = m - lo
    if lo > hi or lo >= m:
        raise HardCutError("NO_BALANCED_CUT", f"no side size k with {eps * m:g} < k < {m - eps * m:g}")
    return lo, hi


def _result(model, mask, method, evaluations):
    cut = VertexCut(mask).canonical()
    boundary = edge_boundary(model.graph, cut)
    return CutResult(
        cut=cut,
        area=boundary * model.params.cut_disc_area,
        side_volumes=side_volumes(model, cut),
        method=method,
        evaluations=int(evaluations),
        boundary=boundary,
    )


def exact_balanced_min_cut(model, eps):
    """Global minimum over all balanced binary cuts, by enumeration."""
    graph = model.graph
    _check_enumerable(graph)
    m = graph.vertex_count
    lo, hi = _balanced_range(m, eps)
    best = None
    for masks, sizes, bnd in _iter_subset_boundaries(graph):
        keep = (sizes >= lo) & (sizes <= hi)
        if not keep.any():
            continue
        masks, sizes, bnd = masks[keep], sizes[keep], bnd[keep]
        tied = bnd == bnd.min()
        tied &= sizes == sizes[tied].min()
        cands = masks[tied]
        j = int(np.argmin(lex_key(cands, m)))
        key = (int(bnd[tied][0]), int(sizes[tied][0]), int(lex_key(cands[j : j + 1], m)[0]))
        if best is None or key < best[0]:
            best = (key, int(cands[j]))
    mask = np.array([best[1] >> i & 1 for i in range(m)], dtype=bool)
    return _result(model, mask, EXACT, (1 << m) - 2)


def spectral_sweep_cut(model, eps):
    """Best balanced prefix of the vertices sorted by the second eigenvector.

    Entries are sorted ascending with ties broken by vertex index.
    """
    graph = model.graph
    m = graph.vertex_count
    lo, hi = _balanced_range(m, eps)
    _, _, vec, _ = second_eigenpair(graph)
    order = np.argsort(vec, kind="stable")
    table = graph.neighbor_table
    d = table.shape[1]
    mask = np.zeros(m, dtype=bool)
    boundary, best, evaluations = 0, None, 0
    for k, v in enumerate(order[:-1], start=1):
        boundary += d - 2 * int(mask[table[v]].sum())
        mask[v] = True
        if lo <= k <= hi:
            evaluations += 1
            cut = VertexCut(mask).canonical()
            key = (boundary, cut.size, cut.to_string())
            if best is None or key < best[0]:
                best = (key, cut.membership.copy())
    return _result(model, best[1], SPECTRAL_SWEEP, evaluations)


def local_search_refine(model, start, eps, seed=0):
    """First-improvement descent with single-vertex flips and balanced swaps.

    Each pass visits the vertices in a fresh random order, flipping any
    vertex whose move lowers the boundary and keeps the cut balanced, then
    tries to swap each ``U1`` vertex with the first ``U2`` vertex (in the
    same order) that lowers the boundary.  Stops after a pass without
    improvement or ``MOVES_PER_VERTEX * m`` applied moves.
    """
    graph = model.graph
    table = graph.neighbor_table
    m, d = table.shape
    lo, hi = _balanced_range(m, eps)
    side = check_membership(start, m)
    k = int(side.sum())
    if not lo <= k <= hi:
        raise HardCutError("UNBALANCED_START", f"start has {k} cells on one side, need {lo}..{hi}")
    rng = np.random.default_rng(seed)
    other = (side[table] != side[:, None]).sum(axis=1)
    budget = MOVES_PER_VERTEX * m
    moves = evaluations = 0

    def flip(v):
        same = side[table[v]] == side[v]
        np.add.at(other, table[v], np.where(same, 1, -1))
        other[v] = d - other[v]
        side[v] = not side[v]

    improved = True
    while improved and moves < budget:
        improved = False
        order = rng.permutation(m)
        for v in order:
            if moves >= budget:
                break
            evaluations += 1
            if d - 2 * other[v] < 0:
                k_new = k - 1 if side[v] else k + 1
                if lo <= k_new <= hi:
                    flip(v)
                    k, moves, improved = k_new, moves + 1, True
        for u in order:
            if moves >= budget:
                break
            if not side[u]:
                continue
            gain = (d - 2 * other) + (d - 2 * other[u])
            np.add.at(gain, table[u], 2)
            cand = ~side[order] & (gain[order] < 0)
            evaluations += m - k
            if cand.any():
                w = order[int(np.argmax(cand))]
                flip(u)
                flip(w)
                moves, improved = moves + 1, True
    return _result(model, side, LOCAL_SEARCH, evaluations)


def _random_balanced_start(model, lo, hi, rng):
    """Grow a random connected region of random balanced size (at most half the cells)."""
    table = model.graph.neighbor_table
    m = table.shape[0]
    target = int(rng.integers(lo, min(hi, m // 2) + 1))
    mask = np.zeros(m, dtype=bool)
    frontier = [int(rng.integers(m))]
    count = 0
    while count < target:
        v = frontier.pop(int(rng.integers(len(frontier))))
        if mask[v]:
            continue
        mask[v] = True
        count += 1
        frontier.extend(int(w) for w in table[v] if not mask[w])
    return mask


def randomized_search(model, eps, restarts=50, seed=0):
    """Best of ``restarts`` refined starts.

    Restart 0 refines the spectral sweep cut with ``seed``; restart ``i``
    draws a random connected balanced region and refines it, both from
    ``SeedSequence([seed, i])``.
    """
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    m = model.vertex_count
    lo, hi = _balanced_range(m, eps)
    sweep = spectral_sweep_cut(model, eps)
    best = local_search_refine(model, sweep.cut, eps, seed)
    evaluations = sweep.evaluations + best.evaluations
    for i in range(1, restarts):
        rng = np.random.default_rng(np.random.SeedSequence([seed, i]))
        start = _random_balanced_start(model, lo, hi, rng)
        res = local_search_refine(model, start, eps, rng)
        evaluations += res.evaluations
        if res.sort_key < best.sort_key:
            best = res
    return CutResult(best.cut, best.area, best.side_volumes, RANDOM_RESTART, evaluations, best.boundary)


METHODS = ("exact", "spectral", "local", "random")


def find_cut(model, eps, method="random", restarts=50, seed=0):
    """Dispatch by short method name; ``local`` refines the spectral sweep cut."""
    if method == "exact":
        return exact_balanced_min_cut(model, eps)
    if method == "spectral":
        return spectral_sweep_cut(model, eps)
    if method == "local":
        return local_search_refine(model, spectral_sweep_cut(model, eps).cut, eps, seed)
    if method == "random":
        return randomized_search(model, eps, restarts, seed)
    raise ValueError(f"method must be one of {METHODS}, got {method!r}")
