"""Jump and continuity diagnostics for sampled fields.

Continuity cannot be read off samples, so a field is compared with its
recomputation on a grid twice as fine: the largest jump between adjacent
nodes halves for a Lipschitz field and stays put across a discontinuity.
Near discontinuities of the datum the N-mode truncation necessarily
overshoots, so comparisons skip a zone of width 10 pi / N around each jump of
every shifted copy of the odd extension.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .evolution import RevivalDecomposition
from .grid import GridFunction, GridMismatchError, l2_norm
from .revivals import RationalTime

CONTINUITY_THRESHOLD = 1.5
ZONE_FACTOR = 10.0


class DiagnosticNotApplicable(ValueError):
    """The diagnostic needs a discontinuous datum."""


@dataclass(frozen=True)
class ContinuityReport:
    max_jump: float
    max_jump_refined: float
    refinement_ratio: float
    l2_norm: float
    sup_norm: float

    @property
    def consistent_with_continuity(self) -> bool:
        return self.refinement_ratio > CONTINUITY_THRESHOLD


def jump_locations(f: GridFunction, rel_tol: float = 0.05) -> np.ndarray:
    """Points in [0, pi] where the odd extension of f jumps.

    Interior jumps are adjacent samples differing by more than ``rel_tol``
    times max |f|; the end points count when f does not vanish there.
    """
    v = f.values
    scale = np.max(np.abs(v))
    if scale == 0:
        return np.empty(0)
    x = f.x
    d = np.abs(np.diff(v))
    idx = np.flatnonzero(d > rel_tol * scale)
    locs = list(0.5 * (x[idx] + x[idx + 1]))
    if abs(v[0]) > rel_tol * scale:
        locs.append(0.0)
    if abs(v[-1]) > rel_tol * scale:
        locs.append(np.pi)
    return np.array(sorted(locs))


def zone_centres(f: GridFunction, t: RationalTime) -> np.ndarray:
    """Jump points of x -> f_odd(x - 2 pi k / q), k = 0..q-1, reduced mod 2 pi."""
    s = jump_locations(f)
    if s.size == 0:
        return s
    k = np.arange(t.q)
    shifts = 2.0 * np.pi * k / t.q
    pts = np.concatenate([np.add.outer(shifts, s).ravel(), np.add.outer(shifts, -s).ravel()])
    return np.unique(np.mod(pts, 2.0 * np.pi))


def exclusion_mask(x: np.ndarray, centres: np.ndarray, N: int) -> np.ndarray:
    """True at nodes within 5 pi / N (circular distance) of a centre."""
    if centres.size == 0:
        return np.zeros(x.shape, dtype=bool)
    half = 0.5 * ZONE_FACTOR * np.pi / N
    d = np.abs(np.subtract.outer(x, centres))
    d = np.minimum(d % (2.0 * np.pi), 2.0 * np.pi - d % (2.0 * np.pi))
    return np.any(d < half, axis=1)


def max_jump(field: GridFunction, excluded: np.ndarray | None = None) -> float:
    """max |field(x_{i+1}) - field(x_i)| over pairs of non-excluded nodes."""
    d = np.abs(np.diff(field.values))
    if excluded is not None:
        keep = ~(excluded[1:] | excluded[:-1])
        d = d[keep]
    return float(d.max()) if d.size else 0.0


def continuity_report(
    field: GridFunction,
    field_refined: GridFunction,
    centres: np.ndarray | None = None,
    N: int | None = None,
) -> ContinuityReport:
    """Jump sizes on a grid and on its refinement, optionally outside Gibbs zones."""
    if field_refined.M != 2 * field.M:
        raise GridMismatchError(
            f"refined field must have twice the cells: {field.M} and {field_refined.M}"
        )
    if centres is not None:
        if N is None:
            raise ValueError("exclusion zones need the mode count N")
        coarse = max_jump(field, exclusion_mask(field.x, centres, N))
        fine = max_jump(field_refined, exclusion_mask(field_refined.x, centres, N))
    else:
        coarse, fine = max_jump(field), max_jump(field_refined)
    ratio = coarse / fine if fine > 0 else (np.inf if coarse > 0 else 1.0)
    return ContinuityReport(
        max_jump=coarse,
        max_jump_refined=fine,
        refinement_ratio=float(ratio),
        l2_norm=l2_norm(field),
        sup_norm=field.sup(),
    )


def jump_ratio(decomp: RevivalDecomposition) -> float:
    """Largest correction jump outside the Gibbs zones over the largest revival jump.

    The revival field is piecewise constant with its jumps exactly at the zone
    centres, so its jumps are measured on the whole grid.
    """
    centres = zone_centres(decomp.initial, decomp.time)
    if centres.size == 0:
        raise DiagnosticNotApplicable("the initial datum has no jumps")
    mask = exclusion_mask(decomp.x, centres, decomp.modes)
    denom = max_jump(decomp.revival_part)
    if denom == 0:
        raise DiagnosticNotApplicable("the revival field has no jumps")
    return max_jump(decomp.correction, mask) / denom
