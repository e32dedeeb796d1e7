"""Scaling experiment: best balanced cut area against the theorem bound as n grows."""

import csv
import io
import math
import time
from dataclasses import asdict, dataclass, fields
from typing import Optional

import numpy as np

from .cutsearch import randomized_search
from .errors import HardCutError
from .graph import generate_regular
from .handlebody import DEFAULT_EPSILON, build_model, model_lower_bound, normalize
from .validation import check_epsilon, check_scale

CSV_HEADER = ("n", "m", "seed", "epsilon", "c", "c_method", "area", "bound", "ratio", "wall_ms", "error")


@dataclass(frozen=True)
class ExperimentRecord:
    n: int
    m: int
    seed: int
    epsilon: float
    c: Optional[float] = None
    c_method: Optional[str] = None
    area: Optional[float] = None
    bound: Optional[float] = None
    ratio: Optional[float] = None
    wall_ms: Optional[float] = None
    error: str = ""

    def to_row(self):
        def fmt(v):
            if v is None:
                return ""
            return repr(v) if isinstance(v, float) else str(v)

        return [fmt(v) for v in asdict(self).values()]

    @classmethod
    def from_row(cls, row):
        kinds = {"n": int, "m": int, "seed": int, "c_method": str, "error": str}
        values = {}
        for f, raw in zip(fields(cls), row):
            if f.name == "error":
                values[f.name] = raw
            elif raw == "":
                values[f.name] = None
            else:
                values[f.name] = kinds.get(f.name, float)(raw)
        return cls(**values)


def vertex_count_for(n):
    """``n^3`` rounded up to the next even number (a cubic graph needs even order)."""
    m = n**3
    return m + (m % 2)


def run_row(n, eps, seed, restarts, sphere=False):
    n = check_scale(n)
    m = vertex_count_for(n)
    search_eps = eps / 2.0 if sphere else eps
    t0 = time.perf_counter()
    try:
        model = build_model(generate_regular(m, 3, seed), n)
        if sphere:
            model = normalize(model, 1.0, reference="sphere")
        result = randomized_search(model, search_eps, restarts, seed)
        bound = model_lower_bound(model, search_eps)
    except HardCutError as exc:
        wall = (time.perf_counter() - t0) * 1e3
        return ExperimentRecord(n, m, seed, search_eps, wall_ms=wall, error=str(exc))
    wall = (time.perf_counter() - t0) * 1e3
    return ExperimentRecord(
        n=n,
        m=m,
        seed=seed,
        epsilon=search_eps,
        c=float(model.c),
        c_method=model.expansion.method,
        area=float(result.area),
        bound=float(bound),
        ratio=float(result.area / bound),
        wall_ms=wall,
    )


def run_scaling(n_list, eps=DEFAULT_EPSILON, seeds=(0, 1, 2, 3, 4), restarts=50, sphere=False):
    """One record per ``(n, seed)``, in input order; failures become error rows."""
    eps = check_epsilon(eps)
    return [run_row(n, eps, seed, restarts, sphere) for n in n_list for seed in seeds]


def scaling_slope(records):
    """Least-squares slope of best area against ``n`` over the successful rows."""
    ok = [r for r in records if not r.error]
    if len({r.n for r in ok}) < 2:
        return math.nan
    x = np.array([r.n for r in ok], dtype=float)
    y = np.array([r.area for r in ok], dtype=float)
    return float(np.polyfit(x, y, 1)[0])


def records_to_csv(records):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(r.to_row())
    return buf.getvalue()


def records_from_csv(text):
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_HEADER:
        raise HardCutError("BAD_CSV", f"unexpected header {header}")
    return [ExperimentRecord.from_row(row) for row in reader if row]
