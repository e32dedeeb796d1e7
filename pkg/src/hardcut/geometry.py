"""Closed-form ball, sphere and cap quantities used by the handlebody model,
and the per-cell area constants derived from them.

Lengths are in the same units as the vertex-ball radius ``1/n``.  All
functions are plain float arithmetic.
"""

import math
from dataclasses import dataclass

from .errors import HardCutError
from .validation import check_epsilon, check_scale

#: Angle (radians) fixing the hole caps: a cap of height ``r(1 - sin HOLE_ANGLE)``.
HOLE_ANGLE = 0.5
#: Radial projection onto the outer sphere is Lipschitz with this constant.
PROJECTION_LIPSCHITZ = 2.0
#: Slice-length threshold (times ``1/n``) and radial interval start (times ``1/n``).
SLICE_LENGTH = 0.1
INNER_RADIUS = 0.9

_ISO_CONSTANT = (36.0 * math.pi) ** (1.0 / 3.0)
_ABS_TOL = 1e-12


def _check_radius(r):
    if not r > 0:
        raise HardCutError("NONPOSITIVE_RADIUS", f"radius must be positive, got {r!r}")


def _check_volume(v):
    if not v >= 0:
        raise HardCutError("NEGATIVE_VOLUME", f"volume must be nonnegative, got {v!r}")


def ball_volume(r):
    _check_radius(r)
    return 4.0 * math.pi * r**3 / 3.0


def sphere_area(r):
    _check_radius(r)
    # same operation order as the cap formula, so a full cap matches exactly
    return math.pi * r * (4.0 * r)


def spherical_cap_area(r, h):
    """Area ``2*pi*r*h`` of a cap of height ``h`` on a sphere of radius ``r``."""
    _check_radius(r)
    if not 0.0 <= h <= 2.0 * r:
        raise HardCutError("HEIGHT_OUT_OF_RANGE", f"need 0 <= h <= 2r, got h={h!r}, r={r!r}")
    return math.pi * r * (2.0 * h)


def hole_cap_height(r):
    return r * (1.0 - math.sin(HOLE_ANGLE))


def pants_residual_area(n):
    """Area of a vertex sphere of radius ``1/n`` left after removing its three hole caps."""
    n = check_scale(n)
    return math.pi * (6.0 * math.sin(HOLE_ANGLE) - 2.0) / n**2


def euclidean_isoperimetric_area(volume):
    """Boundary area of the round ball enclosing ``volume``: ``(36 pi)^(1/3) V^(2/3)``."""
    _check_volume(volume)
    return _ISO_CONSTANT * volume ** (2.0 / 3.0)


def ball_piece_area_lower(volume):
    """Crude separating-area floor ``V^(2/3)`` for a piece of volume ``V`` of a cell."""
    _check_volume(volume)
    return volume ** (2.0 / 3.0)


def hole_wet_area_lower(n):
    """Floor ``pi / (2 n^2)`` on the area a mostly-``U1`` cell meets on each hole."""
    n = check_scale(n)
    return 2.0 * math.pi / (4.0 * n**2)


@dataclass(frozen=True)
class ChainStep:
    name: str
    claimed_value: float
    recomputed_value: float
    claimed_holds: bool
    recomputed_holds: bool

    @property
    def discrepancy(self):
        return not math.isclose(self.claimed_value, self.recomputed_value, rel_tol=1e-9, abs_tol=0.0)


@dataclass(frozen=True)
class ConstantChainReport:
    """Step-by-step recomputation of the per-cell floor for a projected cell.

    ``claimed_holds`` on a step means the claimed constant is implied by the
    rigorous recomputation and still supports the next step;
    ``recomputed_holds`` is the same test for the recomputed constant.
    """

    n: int
    epsilon: float
    steps: tuple
    target: float
    conclusion_bound: float
    conclusion_holds: bool
    claimed_conclusion_holds: bool

    @property
    def discrepancy(self):
        return any(s.discrepancy for s in self.steps)

    def step(self, name):
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_text(self):
        lines = [f"n={self.n}", f"epsilon={self.epsilon!r}"]
        for s in self.steps:
            lines += [
                f"{s.name}.claimed={s.claimed_value!r}",
                f"{s.name}.recomputed={s.recomputed_value!r}",
                f"{s.name}.claimed_holds={str(s.claimed_holds).lower()}",
                f"{s.name}.recomputed_holds={str(s.recomputed_holds).lower()}",
            ]
        lines += [
            f"target={self.target!r}",
            f"conclusion_bound={self.conclusion_bound!r}",
            f"conclusion_holds={str(self.conclusion_holds).lower()}",
            f"claimed_conclusion_holds={str(self.claimed_conclusion_holds).lower()}",
            f"discrepancy={str(self.discrepancy).lower()}",
        ]
        return "\n".join(lines) + "\n"


def verify_constant_chain(n, eps):
    """Replay the co-area / disc-filling / projection estimate for one cell.

    The cell is a ball of radius ``1/n`` whose outer sphere meets ``U1`` in
    area at least ``1/n^2`` while most of its volume lies in ``U2``.  The
    chain bounds the separating area inside the shell between radii
    ``0.9/n`` and ``1/n``.  A Lipschitz-``L`` map inflates area by at most
    ``L^2``.  The claimed column (``claimed_value``) charges only ``L`` for
    the projected filling, so the two columns diverge from step three on.
    """
    n = check_scale(n)
    eps = check_epsilon(eps)
    unit = 1.0 / n**2
    target = eps * unit
    slice_len = SLICE_LENGTH / n
    shell = (1.0 - INNER_RADIUS) / n
    lip = PROJECTION_LIPSCHITZ
    wet = 1.0 * unit

    coarea = slice_len * shell
    coarea_claimed = unit / 100.0

    # total boundary length below slice_len; a disc of that radius covers any filling
    filling = math.pi * slice_len**2
    filling_claimed = math.pi * unit / 100.0

    projected = lip**2 * filling
    projected_claimed = math.pi * unit / 50.0

    subtracted = wet - projected
    subtracted_claimed = wet - projected_claimed

    floor = subtracted / lip**2
    floor_claimed = unit / 4.0

    def _le(a, b):
        return a <= b + _ABS_TOL * unit

    steps = (
        ChainStep("coarea_threshold", coarea_claimed, coarea,
                  _le(coarea_claimed, coarea) and coarea_claimed > target, coarea > target),
        ChainStep("minimal_disc_filling", filling_claimed, filling,
                  _le(filling, filling_claimed) and filling_claimed < wet, filling < wet),
        ChainStep("lipschitz_projection", projected_claimed, projected,
                  _le(projected, projected_claimed) and projected_claimed < wet, projected < wet),
        ChainStep("projected_area_subtraction", subtracted_claimed, subtracted,
                  _le(subtracted_claimed, subtracted) and subtracted_claimed > 0, subtracted > 0),
        ChainStep("final_f1_bound", floor_claimed, floor,
                  _le(floor_claimed, floor) and floor_claimed >= target, floor >= target),
    )
    return ConstantChainReport(
        n=n,
        epsilon=eps,
        steps=steps,
        target=target,
        conclusion_bound=floor,
        conclusion_holds=floor >= target,
        claimed_conclusion_holds=floor_claimed >= target,
    )
