"""Generic 2-D rate-region geometry.

Every bound in this toolkit reduces to a family of constraint sets of the
canonical shape {(R1, R2) >= 0 : R1 <= r1_max, R2 <= r2_max, R1+R2 <= sum_max}.
A region is the union of that family over its parameter grid; this module
turns such families into sampled Pareto frontiers and compares frontiers.
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import ParameterError

__all__ = [
    "RatePair",
    "ConstraintSet",
    "Frontier",
    "frontier_from_caps",
    "frontier_from_family",
    "frontier_from_sets",
    "upper_concave_envelope",
    "gap_curve",
    "directed_gap",
    "contains",
    "save_frontier",
    "load_frontier",
]

_CHUNK = 8192
# Absolute feasibility slack when testing "cap >= r2 sample": several sweeps
# place constraint caps within float rounding of sample levels, and exact
# comparisons there would flap on the last ulp. Far below every comparison
# tolerance used by callers.
FEAS_SLACK = 1e-9


def worker_count() -> int:
    """Sweep parallelism, capped by the CZIC_THREADS environment variable."""
    env = os.environ.get("CZIC_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ParameterError(f"CZIC_THREADS must be an integer, got {env!r}")
    return 1


@dataclass(frozen=True)
class RatePair:
    """A nonnegative (R1, R2) point in bits per channel use."""

    r1: float
    r2: float

    def __post_init__(self):
        for name, v in (("r1", self.r1), ("r2", self.r2)):
            if not math.isfinite(v) or v < 0:
                raise ParameterError(f"{name} must be finite and >= 0, got {v!r}")


@dataclass(frozen=True)
class ConstraintSet:
    """One bound's half-plane caps at one parameter point.

    Each cap is >= 0; +inf marks a constraint the bound does not impose, so
    the canonical three-slot form is kept for every bound.
    """

    r1_max: float = math.inf
    r2_max: float = math.inf
    sum_max: float = math.inf
    provenance: str = ""

    def __post_init__(self):
        for name, v in (("r1_max", self.r1_max), ("r2_max", self.r2_max), ("sum_max", self.sum_max)):
            if math.isnan(v) or v < 0:
                raise ParameterError(f"{name} must be >= 0 (or +inf), got {v!r}")


@dataclass
class Frontier:
    """Sampled Pareto boundary of a rate region.

    Points are stored with r2 strictly decreasing (so r1 is nondecreasing);
    r1_at() evaluates the piecewise-linear interpolant.
    """

    r2: np.ndarray
    r1: np.ndarray
    convexified: bool = False
    resolution: int = 0
    provenance: str = ""

    def __post_init__(self):
        self.r2 = np.asarray(self.r2, dtype=float)
        self.r1 = np.asarray(self.r1, dtype=float)
        if self.r2.ndim != 1 or self.r2.shape != self.r1.shape or self.r2.size == 0:
            raise ParameterError("frontier needs matching, nonempty r2/r1 arrays")
        if np.any(~np.isfinite(self.r2)) or np.any(~np.isfinite(self.r1)):
            raise ParameterError("frontier samples must be finite")
        if np.any(self.r1 < 0) or np.any(self.r2 < 0):
            raise ParameterError("frontier samples must be nonnegative")
        if self.r2.size > 1:
            if np.any(np.diff(self.r2) >= 0):
                raise ParameterError("r2 samples must be strictly decreasing")
            if np.any(np.diff(self.r1) < 0):
                raise ParameterError("r1 samples must be nondecreasing as r2 falls")
        if not self.resolution:
            self.resolution = int(self.r2.size)

    def __len__(self) -> int:
        return int(self.r2.size)

    @property
    def points(self) -> list[RatePair]:
        return [RatePair(float(a), float(b)) for a, b in zip(self.r1, self.r2)]

    @property
    def r2_max(self) -> float:
        return float(self.r2[0])

    def r1_at(self, r2: float) -> float:
        """Interpolated r1 at the given r2 (0 beyond the frontier's reach)."""
        if r2 > self.r2_max:
            return 0.0
        return float(np.interp(r2, self.r2[::-1], self.r1[::-1]))


def _reduce_caps(r1_caps, r2_caps, sum_caps, samples):
    """max over candidates of min(r1_max, sum_max - r2), masked by reach >= r2."""
    reach = np.minimum(r2_caps, sum_caps)
    best = np.full(samples.shape, -np.inf)
    starts = range(0, r1_caps.size, _CHUNK)

    def one(start):
        sl = slice(start, start + _CHUNK)
        vals = np.minimum(r1_caps[sl][None, :], sum_caps[sl][None, :] - samples[:, None])
        vals = np.where(reach[sl][None, :] >= samples[:, None] - FEAS_SLACK, vals, -np.inf)
        return vals.max(axis=1)

    workers = worker_count()
    if workers > 1 and r1_caps.size > _CHUNK:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(one, starts))
    else:
        partials = [one(s) for s in starts]
    for p in partials:
        np.maximum(best, p, out=best)
    return best


def frontier_from_caps(
    r1_caps: np.ndarray,
    r2_caps: np.ndarray,
    sum_caps: np.ndarray,
    r2_grid_size: int,
    provenance: str = "",
) -> Frontier:
    """Union-of-constraint-sets frontier from parallel cap arrays.

    The r2 axis is sampled with ``r2_grid_size`` points from 0 up to the
    largest reachable r2 = max over candidates of min(r2_max, sum_max).
    """
    r1_caps = np.asarray(r1_caps, dtype=float).ravel()
    r2_caps = np.asarray(r2_caps, dtype=float).ravel()
    sum_caps = np.asarray(sum_caps, dtype=float).ravel()
    if r1_caps.size == 0:
        raise ParameterError("empty parameter grid")
    if r1_caps.shape != r2_caps.shape or r1_caps.shape != sum_caps.shape:
        raise ParameterError("cap arrays must have matching shapes")
    for name, arr in (("r1_max", r1_caps), ("r2_max", r2_caps), ("sum_max", sum_caps)):
        if np.any(np.isnan(arr)) or np.any(arr < 0):
            raise ParameterError(f"malformed bound: {name} values must be >= 0")
    if r2_grid_size < 2:
        raise ParameterError("r2_grid_size must be >= 2")

    reach = np.minimum(r2_caps, sum_caps)
    top = float(reach.max())
    if not math.isfinite(top):
        raise ParameterError("cannot sample a frontier with unbounded r2")
    if top < 1e-12:  # degenerate region: collapse float residue onto the r1 axis
        top = 0.0
    samples = np.unique(np.linspace(0.0, top, r2_grid_size))
    best = _reduce_caps(r1_caps, r2_caps, sum_caps, samples)
    if not np.all(np.isfinite(best)):
        raise ParameterError("frontier is unbounded in r1 (no finite r1 or sum cap)")
    best = np.maximum.accumulate(best[::-1])[::-1]  # enforce monotonicity against float noise
    return Frontier(
        r2=samples[::-1].copy(),
        r1=best[::-1].copy(),
        resolution=int(r2_grid_size),
        provenance=provenance,
    )


def frontier_from_sets(sets: Sequence[ConstraintSet], r2_grid_size: int, provenance: str = "") -> Frontier:
    caps = np.array([[s.r1_max, s.r2_max, s.sum_max] for s in sets], dtype=float)
    if caps.size == 0:
        raise ParameterError("empty constraint-set pool")
    return frontier_from_caps(caps[:, 0], caps[:, 1], caps[:, 2], r2_grid_size, provenance)


def frontier_from_family(
    family: Callable[[object], ConstraintSet],
    parameter_grid: Iterable[object],
    r2_grid_size: int,
    provenance: str = "",
) -> Frontier:
    """Frontier of the union of ``family(point)`` over the parameter grid."""
    grid = list(parameter_grid)
    if not grid:
        raise ParameterError("empty parameter grid")
    return frontier_from_sets([family(p) for p in grid], r2_grid_size, provenance)


def upper_concave_envelope(frontier: Frontier) -> Frontier:
    """Upper concave envelope over the same r2 samples (time sharing).

    Monotone-chain upper hull of the sampled points; the output dominates the
    input pointwise and the operation is idempotent.
    """
    x = frontier.r2[::-1]
    y = frontier.r1[::-1]
    if x.size <= 2:
        return Frontier(frontier.r2.copy(), frontier.r1.copy(), True,
                        frontier.resolution, frontier.provenance)
    hull = []  # upper hull, left to right in r2
    for px, py in zip(x, y):
        while len(hull) >= 2:
            (ox, oy), (ax, ay) = hull[-2], hull[-1]
            if (ax - ox) * (py - oy) - (ay - oy) * (px - ox) >= 0.0:
                hull.pop()
            else:
                break
        hull.append((px, py))
    hx = np.array([p[0] for p in hull])
    hy = np.array([p[1] for p in hull])
    env = np.interp(x, hx, hy)
    env = np.maximum(env, y)  # never dip below the input at a sample
    return Frontier(frontier.r2.copy(), env[::-1].copy(), True,
                    frontier.resolution, frontier.provenance)


def gap_curve(outer: Frontier, inner: Frontier) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise r1_outer(r2) - r1_inner(r2) over the shared r2 samples.

    Frontiers on different grids are resampled onto the union grid by linear
    interpolation; a frontier contributes r1 = 0 beyond its r2 reach.
    """
    if len(outer) == 0 or len(inner) == 0:
        raise ParameterError("gap comparison needs two nonempty frontiers")
    if outer.r2.shape == inner.r2.shape and np.array_equal(outer.r2, inner.r2):
        return outer.r2.copy(), outer.r1 - inner.r1
    grid = np.union1d(outer.r2, inner.r2)

    def values(fr: Frontier) -> np.ndarray:
        v = np.interp(grid, fr.r2[::-1], fr.r1[::-1])
        return np.where(grid > fr.r2_max, 0.0, v)

    return grid, values(outer) - values(inner)


def directed_gap(outer: Frontier, inner: Frontier) -> float:
    """max over shared r2 samples of r1_outer(r2) - r1_inner(r2).

    Positive means the first frontier pokes above the second somewhere;
    within tolerance of 0 means containment at the sampled resolution.
    """
    _, gaps = gap_curve(outer, inner)
    return float(np.max(gaps))


def contains(frontier: Frontier, point: RatePair, tol: float) -> bool:
    """True iff the point lies below the interpolated frontier within tol."""
    if tol < 0:
        raise ParameterError("tol must be >= 0")
    if point.r2 > frontier.r2_max + tol:
        return False
    r2 = min(point.r2, frontier.r2_max)
    return point.r1 <= frontier.r1_at(r2) + tol


def save_frontier(frontier: Frontier, csv_path: str | Path, meta: dict | None = None) -> Path:
    """Write the frontier CSV plus its JSON sidecar; returns the sidecar path.

    CSV schema: header ``r2_bits,r1_bits``, rows sorted by descending r2.
    """
    csv_path = Path(csv_path)
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["r2_bits", "r1_bits"])
        for a, b in zip(frontier.r2, frontier.r1):
            w.writerow([f"{a:.17g}", f"{b:.17g}"])
    sidecar = csv_path.with_suffix(".json")
    payload = dict(meta or {})
    payload.setdefault("bound", frontier.provenance)
    payload["convexified"] = frontier.convexified
    payload["rows"] = len(frontier)
    with open(sidecar, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return sidecar


def load_frontier(csv_path: str | Path) -> Frontier:
    rows = []
    with open(csv_path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["r2_bits", "r1_bits"]:
            raise ParameterError(f"unexpected CSV header {header!r}")
        for rec in reader:
            rows.append((float(rec[0]), float(rec[1])))
    if not rows:
        raise ParameterError(f"no frontier rows in {csv_path}")
    arr = np.array(rows)
    return Frontier(r2=arr[:, 0], r1=arr[:, 1])
