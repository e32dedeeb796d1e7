"""Discrete thickened-expander model and the executable case analysis.

Each vertex of a 3-regular graph becomes a Euclidean ball of radius ``1/n``
(a *cell*); each edge identifies one hole cap on each of its two cells.  A
separating surface is modelled two ways:

* a :class:`VertexCut` puts whole cells on one side and severs every
  boundary hole with a flat disc (:func:`discrete_cut_area`);
* a :class:`FractionalCut` records the fraction of each cell's volume on the
  smaller side ``U1`` plus, optionally, the separating area claimed inside
  each cell; :func:`case_analysis` replays the counting argument on it.
"""

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import geometry
from .errors import HardCutError
from .graph import (
    ENUMERATION_LIMIT,
    EXACT,
    ExpansionCertificate,
    Multigraph,
    dumps,
    edge_boundary,
    exact_expansion,
    loads,
    spectral_expansion_bound,
)
from .validation import check_epsilon, check_graph, check_membership, check_scale

DEFAULT_EPSILON = 0.009

CASE_1 = "CASE_1"
CASE_2A = "CASE_2A"
CASE_2B = "CASE_2B"

_REL_TOL = 1e-9


class CellClass(enum.IntEnum):
    MOSTLY_U2 = 0
    CUT_CELL = 1
    MOSTLY_U1 = 2


@dataclass(frozen=True)
class GeometryParams:
    """Per-cell geometry of the model at scale ``n``.

    ``normalization_length_factor`` is the cumulative length rescaling; all
    areas carry its square and all volumes its cube.
    """

    n: int
    vertex_count: int
    vertex_volume: float
    hole_cap_area: float
    cut_disc_area: float
    total_handlebody_volume: float
    normalization_length_factor: float = 1.0

    @classmethod
    def from_scale(cls, n, vertex_count, length_factor=1.0):
        n = check_scale(n)
        r = 1.0 / n
        s = float(length_factor)
        vv = geometry.ball_volume(r) * s**3
        return cls(
            n=n,
            vertex_count=int(vertex_count),
            vertex_volume=vv,
            hole_cap_area=geometry.spherical_cap_area(r, geometry.hole_cap_height(r)) * s**2,
            # flat disc spanning the cap's boundary circle, radius r*cos(angle)
            cut_disc_area=math.pi * (r * math.cos(geometry.HOLE_ANGLE)) ** 2 * s**2,
            total_handlebody_volume=int(vertex_count) * vv,
            normalization_length_factor=s,
        )

    @property
    def unit_area(self):
        """``1/n^2`` in the model's (possibly rescaled) area units."""
        return self.normalization_length_factor**2 / self.n**2

    @property
    def residual_area(self):
        return geometry.pants_residual_area(self.n) * self.normalization_length_factor**2

    @property
    def sphere_area(self):
        return geometry.sphere_area(1.0 / self.n) * self.normalization_length_factor**2

    @property
    def ball_volume(self):
        """Volume of the ball obtained from the handlebody (gluing adds nothing)."""
        return self.total_handlebody_volume

    @property
    def sphere_volume(self):
        """Volume of the sphere obtained by doubling the ball."""
        return 2.0 * self.total_handlebody_volume

    @property
    def volume_invariant_active(self):
        """Whether the total volume is tied to ``4 pi / 3`` (vertex count ``n^3``)."""
        return self.vertex_count == self.n**3


@dataclass(frozen=True)
class HandlebodyModel:
    graph: Multigraph
    params: GeometryParams
    expansion: ExpansionCertificate

    @property
    def n(self):
        return self.params.n

    @property
    def vertex_count(self):
        return self.graph.vertex_count

    @property
    def c(self):
        return self.expansion.constant


class VertexCut:
    """Binary cut: ``membership[v]`` is True when cell ``v`` lies in ``U1``."""

    __slots__ = ("membership",)

    def __init__(self, membership):
        mask = np.array(membership, dtype=bool)
        if mask.ndim != 1:
            raise HardCutError("INVALID_CUT", "membership must be one-dimensional")
        mask.flags.writeable = False
        object.__setattr__(self, "membership", mask)

    def __setattr__(self, name, value):
        raise AttributeError("VertexCut is immutable")

    @classmethod
    def from_indices(cls, m, indices):
        return cls(check_membership(list(indices), m))

    @classmethod
    def from_string(cls, bits):
        if set(bits) - {"0", "1"}:
            raise HardCutError("INVALID_CUT", f"membership string must be 0/1, got {bits!r}")
        return cls([ch == "1" for ch in bits])

    def __len__(self):
        return len(self.membership)

    @property
    def size(self):
        return int(self.membership.sum())

    @property
    def indices(self):
        return tuple(int(i) for i in np.flatnonzero(self.membership))

    def complement(self):
        return VertexCut(~self.membership)

    def canonical(self):
        """The same bipartition with the smaller side (lexicographically smaller on ties) selected."""
        m, k = len(self), self.size
        if 2 * k < m:
            return self
        other = self.complement()
        if 2 * k > m:
            return other
        return min(self, other, key=lambda c: c.to_string())

    def to_string(self):
        return "".join("1" if b else "0" for b in self.membership)

    def __eq__(self, other):
        return isinstance(other, VertexCut) and np.array_equal(self.membership, other.membership)

    def __hash__(self):
        return hash(self.membership.tobytes())

    def __repr__(self):
        return f"VertexCut({self.to_string()!r})"


@dataclass(frozen=True, eq=False)
class FractionalCut:
    """Per-cell volume fractions on side ``U1``.

    ``U1`` is kept as the smaller side: if the fractions sum to more than
    half the cells, they are replaced by ``1 - x`` and ``flipped`` is set.
    """

    x: np.ndarray
    epsilon: float = DEFAULT_EPSILON
    per_cell_area: Optional[np.ndarray] = None
    flipped: bool = field(default=False, init=False)

    def __post_init__(self):
        x = np.array(self.x, dtype=float)
        if x.ndim != 1 or not np.all((x >= 0.0) & (x <= 1.0)):
            raise HardCutError("INVALID_CUT", "fractions must be a vector with entries in [0, 1]")
        eps = check_epsilon(self.epsilon)
        flipped = x.sum() > len(x) - x.sum()
        if flipped:
            x = 1.0 - x
        x.flags.writeable = False
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "flipped", bool(flipped))
        if self.per_cell_area is not None:
            a = np.array(self.per_cell_area, dtype=float)
            if a.shape != x.shape or np.any(a < 0):
                raise HardCutError("INVALID_CUT", "per_cell_area must be nonnegative, one per cell")
            a.flags.writeable = False
            object.__setattr__(self, "per_cell_area", a)

    @classmethod
    def from_vertex_cut(cls, cut, epsilon=DEFAULT_EPSILON, per_cell_area=None):
        return cls(cut.membership.astype(float), epsilon, per_cell_area)

    @property
    def balanced(self):
        m = len(self.x)
        u1 = self.x.sum()
        return bool(u1 > self.epsilon * m and m - u1 > self.epsilon * m)


@dataclass(frozen=True)
class CaseReport:
    """Outcome of the counting argument on one fractional cut.

    ``bound`` is the area the fired case guarantees given the per-cell
    floors; for ``CASE_2B`` it counts distinct cells across the boundary of
    ``A2``.  ``claimed_bound`` charges one cell per boundary hole instead.
    ``satisfied`` is None when no per-cell areas were supplied.
    """

    n1: int
    n2: int
    k1: int
    k2: int
    boundary_hole_count: int
    adjacent_cell_count: int
    fired_case: str
    bound: float
    claimed_bound: float
    total_area: Optional[float]
    satisfied: Optional[bool]


def build_model(graph, n, certificate=None):
    """Thicken a connected 3-regular graph into cells of radius ``1/n``.

    The expansion certificate is exact up to ``ENUMERATION_LIMIT`` vertices
    and spectral beyond, unless one computed from this graph is supplied.
    """
    check_graph(graph, degree=3, connected=True)
    params = GeometryParams.from_scale(n, graph.vertex_count)
    if certificate is None:
        if graph.vertex_count <= ENUMERATION_LIMIT:
            certificate = exact_expansion(graph)
        else:
            certificate = spectral_expansion_bound(graph)
    return HandlebodyModel(graph, params, certificate)


def _fractions(model, cut):
    if isinstance(cut, FractionalCut):
        x = cut.x
    else:
        x = check_membership(cut, model.vertex_count).astype(float)
    if len(x) != model.vertex_count:
        raise HardCutError("INVALID_CUT", f"cut has {len(x)} cells, model has {model.vertex_count}")
    return x


def discrete_cut_area(model, cut):
    mask = check_membership(cut, model.vertex_count)
    if not mask.any() or mask.all():
        raise HardCutError("EMPTY_OR_FULL_CUT", "cut must be a proper nonempty subset")
    return edge_boundary(model.graph, mask) * model.params.cut_disc_area


def side_volumes(model, cut):
    x = _fractions(model, cut)
    vv = model.params.vertex_volume
    u1 = float(x.sum())
    return vv * u1, vv * (len(x) - u1)


def theorem_lower_bound(n, eps, c, length_factor=1.0):
    """``eps^2 * n * min(1/8, c/4)``: the weakest of the three case bounds."""
    n = check_scale(n)
    eps = check_epsilon(eps)
    if not c > 0:
        raise HardCutError("NONPOSITIVE_CONSTANT", f"expansion constant must be positive, got {c!r}")
    return eps**2 * n * min(0.125, c / 4.0) * length_factor**2


def model_lower_bound(model, eps):
    return theorem_lower_bound(model.n, eps, model.c, model.params.normalization_length_factor)


def classify_cells(cut, params=None):
    """Class of each cell: cut (``eps < x < 1-eps``), mostly ``U1`` or mostly ``U2``."""
    x, eps = cut.x, cut.epsilon
    classes = np.full(len(x), CellClass.CUT_CELL, dtype=np.int64)
    classes[x >= 1.0 - eps] = CellClass.MOSTLY_U1
    classes[x <= eps] = CellClass.MOSTLY_U2
    return classes


def case_analysis(model, cut):
    """Replay the case split on a balanced fractional cut.

    With ``m`` cells and ``eps = cut.epsilon``:

    * ``CASE_1`` when at least ``eps*m/2`` cells are cut;
    * otherwise at least ``eps*m/2`` cells are mostly ``U1``.  Those whose
      claimed area is at least ``eps/(2 n^2)`` form ``A1``; ``CASE_2A``
      when ``|A1| >= eps*m/4``;
    * else ``CASE_2B``: the rest ``A2`` has at least ``c * min(k2, m-k2)``
      boundary holes, and every cell across them must carry ``eps/n^2``.
    """
    params = model.params
    m, eps = model.vertex_count, cut.epsilon
    if len(cut.x) != m:
        raise HardCutError("INVALID_CUT", f"cut has {len(cut.x)} cells, model has {m}")
    if not cut.balanced:
        raise HardCutError("UNBALANCED_CUT", f"both sides must exceed eps*m = {eps * m:g} cells")
    unit = params.unit_area
    classes = classify_cells(cut, params)
    n1 = int(np.count_nonzero(classes == CellClass.CUT_CELL))
    mostly_u1 = classes == CellClass.MOSTLY_U1
    n2 = int(mostly_u1.sum())
    # U1 is the smaller side, so n2 * (1 - eps) <= m / 2
    if n2 * (1.0 - eps) > m / 2.0 * (1 + _REL_TOL):
        raise HardCutError("CASE_SPLIT_VIOLATION", f"n2 = {n2} exceeds m / (2(1 - eps))")
    areas = cut.per_cell_area
    total = None if areas is None else float(areas.sum())

    def _report(case, bound, claimed_bound, k1=0, k2=0, holes=0, adjacent=0):
        satisfied = None if total is None else total >= bound * (1 - _REL_TOL)
        return CaseReport(n1, n2, k1, k2, holes, adjacent, case, bound, claimed_bound, total, satisfied)

    if n1 >= eps * m / 2.0:
        bound = eps * m / 2.0 * eps * unit
        return _report(CASE_1, bound, bound)
    if n2 < eps * m / 2.0:
        raise HardCutError(
            "CASE_SPLIT_VIOLATION", f"n1 = {n1} and n2 = {n2} are both below eps*m/2 = {eps * m / 2:g}"
        )
    if areas is None:
        raise HardCutError("MISSING_AREAS", "per_cell_area is required to split the mostly-U1 cells")
    in_a1 = mostly_u1 & (areas >= eps / 2.0 * unit)
    in_a2 = mostly_u1 & ~in_a1
    k1, k2 = int(in_a1.sum()), int(in_a2.sum())
    if k1 >= eps * m / 4.0:
        bound = eps * m / 4.0 * eps / 2.0 * unit
        return _report(CASE_2A, bound, bound, k1, k2)

    holes = edge_boundary(model.graph, in_a2)
    if holes < model.c * min(k2, m - k2) * (1 - _REL_TOL):
        raise HardCutError(
            "CERTIFICATE_VIOLATION", f"|dA2| = {holes} < c * {min(k2, m - k2)} with c = {model.c!r}"
        )
    e = model.graph.edge_array
    across = np.concatenate([e[in_a2[e[:, 0]] & ~in_a2[e[:, 1]], 1], e[in_a2[e[:, 1]] & ~in_a2[e[:, 0]], 0]])
    adjacent = int(len(np.unique(across)))
    bound = adjacent * eps * unit
    claimed_bound = max(holes, model.c * eps * m / 4.0) * eps * unit
    return _report(CASE_2B, bound, claimed_bound, k1, k2, holes, adjacent)


def normalize(model, target_total_volume, reference="handlebody"):
    """Rescale lengths so the handlebody (or its doubled sphere) has the target volume."""
    if not target_total_volume > 0:
        raise HardCutError("NONPOSITIVE_TARGET", f"target volume must be positive, got {target_total_volume!r}")
    if reference == "handlebody":
        current = model.params.total_handlebody_volume
    elif reference == "sphere":
        current = model.params.sphere_volume
    else:
        raise ValueError(f"reference must be 'handlebody' or 'sphere', got {reference!r}")
    s = (target_total_volume / current) ** (1.0 / 3.0)
    params = GeometryParams.from_scale(
        model.n, model.vertex_count, model.params.normalization_length_factor * s
    )
    return replace(model, params=params)


def model_params_text(model, eps=DEFAULT_EPSILON):
    cert = model.expansion
    if cert.method == EXACT:
        witness = " ".join(str(v) for v in cert.witness)
    else:
        witness = repr(float(cert.witness))
    lines = [
        f"n={model.n}",
        f"epsilon={float(eps)!r}",
        f"c={float(cert.constant)!r}",
        f"method={cert.method}",
        f"witness={witness}",
        f"normalization_length_factor={model.params.normalization_length_factor!r}",
    ]
    return "\n".join(lines) + "\n"


def parse_key_values(text):
    out = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise HardCutError("BAD_PARAMS_FILE", f"expected key=value, got {line!r}")
        out[key.strip()] = value.strip()
    return out


def save_model(model, graph_path, params_path, eps=DEFAULT_EPSILON):
    with open(graph_path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(dumps(model.graph))
    with open(params_path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(model_params_text(model, eps))


def load_model(graph_path, params_path):
    """Inverse of :func:`save_model`; returns ``(model, epsilon)``."""
    with open(graph_path, encoding="ascii") as fh:
        graph = loads(fh.read())
    with open(params_path, encoding="ascii") as fh:
        kv = parse_key_values(fh.read())
    method = kv["method"]
    if method == EXACT:
        witness = tuple(int(t) for t in kv["witness"].split())
        boundary = edge_boundary(graph, list(witness))
    else:
        witness, boundary = float(kv["witness"]), None
    cert = ExpansionCertificate(float(kv["c"]), method, witness, boundary=boundary)
    model = build_model(graph, int(kv["n"]), certificate=cert)
    factor = float(kv["normalization_length_factor"])
    if factor != 1.0:
        model = replace(model, params=GeometryParams.from_scale(model.n, graph.vertex_count, factor))
    return model, float(kv["epsilon"])


def default_scale(vertex_count):
    """Scale ``n`` whose cube is nearest the vertex count (at least 1)."""
    return max(1, round(vertex_count ** (1.0 / 3.0)))
