"""Finite-alphabet oracle for the discrete memoryless cognitive Z-channel.

Evaluates the superposition inner bound and the cloud-center outer bound at
explicit input decompositions, searches over decompositions to trace rate
regions, and probes the more-capable / strong-interference conditions by
sampling input distributions. Condition verdicts are evidence, not proofs.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ParameterError
from .regions import ConstraintSet, Frontier, frontier_from_caps

__all__ = [
    "DMChannel",
    "InnerDecomposition",
    "OuterJoint",
    "SearchConfig",
    "Verdict",
    "mutual_information",
    "conditional_mutual_information",
    "inner_thm1_point",
    "outer_thm2_point",
    "check_more_capable",
    "check_strong_interference",
    "inner_region_search",
    "outer_region_search",
    "load_channel",
    "save_channel",
    "sample_channel",
]

EPS = 1e-15           # probabilities below this are treated as exact zeros
ROW_TOL = 1e-12       # stochasticity tolerance for in-memory tables
LOAD_TOL = 1e-9       # stochasticity tolerance for tables read from JSON
VIOLATION_TOL = 1e-10

_CORNER_WEIGHTS = (1.0, 0.75, 0.5, 0.25, 0.0)
_LEVELS = 65
_MOVES_PER_RESTART = 240


def _check_rows(table: np.ndarray, name: str, tol: float = ROW_TOL):
    if np.any(table < -tol) or np.any(table > 1.0 + tol):
        raise ParameterError(f"{name} entries must lie in [0, 1]")
    sums = table.sum(axis=-1)
    if np.any(np.abs(sums - 1.0) > tol):
        raise ParameterError(f"{name} rows must sum to 1 within {tol:g}")


@dataclass(frozen=True)
class DMChannel:
    """Z-structured transition tables p(y2|x2) and p(y1|x1,x2).

    The factorization p(y1,y2|x1,x2) = p(y2|x2) p(y1|x1,x2) is built into the
    representation, so Y2 is conditionally independent of X1 given X2 by
    construction.
    """

    py2_given_x2: np.ndarray   # (x2, y2)
    py1_given_x1x2: np.ndarray  # (x1, x2, y1)

    def __post_init__(self):
        object.__setattr__(self, "py2_given_x2", np.asarray(self.py2_given_x2, dtype=float))
        object.__setattr__(self, "py1_given_x1x2", np.asarray(self.py1_given_x1x2, dtype=float))
        if self.py2_given_x2.ndim != 2 or self.py1_given_x1x2.ndim != 3:
            raise ParameterError("py2_given_x2 must be 2-D and py1_given_x1x2 3-D")
        if self.py1_given_x1x2.shape[1] != self.py2_given_x2.shape[0]:
            raise ParameterError("x2 alphabet size differs between the two tables")
        _check_rows(self.py2_given_x2, "py2_given_x2")
        _check_rows(self.py1_given_x1x2, "py1_given_x1x2")

    @property
    def x1_size(self) -> int:
        return self.py1_given_x1x2.shape[0]

    @property
    def x2_size(self) -> int:
        return self.py2_given_x2.shape[0]

    @property
    def y1_size(self) -> int:
        return self.py1_given_x1x2.shape[2]

    @property
    def y2_size(self) -> int:
        return self.py2_given_x2.shape[1]

    def default_u_size(self) -> int:
        # heuristic auxiliary cardinality; no tight bound is known
        return self.x1_size * self.x2_size + 1


@dataclass(frozen=True)
class InnerDecomposition:
    """Product-form input p(u) p(x1) p(x2|u,x1); rows may be deterministic."""

    pu: np.ndarray              # (u,)
    px1: np.ndarray             # (x1,)
    px2_given_ux1: np.ndarray   # (u, x1, x2)

    def __post_init__(self):
        object.__setattr__(self, "pu", np.asarray(self.pu, dtype=float))
        object.__setattr__(self, "px1", np.asarray(self.px1, dtype=float))
        object.__setattr__(self, "px2_given_ux1", np.asarray(self.px2_given_ux1, dtype=float))
        if self.pu.ndim != 1 or self.px1.ndim != 1 or self.px2_given_ux1.ndim != 3:
            raise ParameterError("decomposition tables have wrong ranks")
        if self.px2_given_ux1.shape[:2] != (self.pu.size, self.px1.size):
            raise ParameterError("px2_given_ux1 leading axes must be (u, x1)")
        _check_rows(self.pu[None, :], "pu")
        _check_rows(self.px1[None, :], "px1")
        _check_rows(self.px2_given_ux1, "px2_given_ux1")

    def joint_uxx(self) -> np.ndarray:
        return np.einsum("u,a,uab->uab", self.pu, self.px1, self.px2_given_ux1)


@dataclass(frozen=True)
class OuterJoint:
    """Unrestricted joint probability table over (u, x1, x2)."""

    puxx: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "puxx", np.asarray(self.puxx, dtype=float))
        if self.puxx.ndim != 3:
            raise ParameterError("puxx must be 3-D (u, x1, x2)")
        if np.any(self.puxx < -ROW_TOL):
            raise ParameterError("puxx entries must be nonnegative")
        if abs(self.puxx.sum() - 1.0) > ROW_TOL:
            raise ParameterError("puxx must sum to 1 within 1e-12")


@dataclass(frozen=True)
class SearchConfig:
    """Condition-check search: simplex grid density, number of Dirichlet
    samples, local refinement halvings, seed. Empty config (no grid, no
    samples) makes the verdict inconclusive."""

    samples: int = 2000
    grid_density: int = 0
    refine_steps: int = 6
    seed: int = 0

    def __post_init__(self):
        if self.samples < 0 or self.grid_density < 0 or self.refine_steps < 0:
            raise ParameterError("search config fields must be nonnegative")


@dataclass(frozen=True)
class Verdict:
    status: str                      # "holds" | "violated" | "inconclusive"
    min_gap: float
    witness: np.ndarray | None = None


# ---------------------------------------------------------------------------
# information kernels
# ---------------------------------------------------------------------------

def _check_normalized(p: np.ndarray):
    if np.any(p < -ROW_TOL):
        raise ParameterError("probability table has negative entries")
    if abs(p.sum() - 1.0) > LOAD_TOL:
        raise ParameterError(f"probability table sums to {p.sum()!r}, not 1")


def mutual_information(joint: np.ndarray) -> float:
    """I(A;B) in bits from a joint table over (A, B); 0 log 0 = 0."""
    p = np.asarray(joint, dtype=float)
    if p.ndim != 2:
        raise ParameterError("mutual_information expects a 2-D joint table")
    _check_normalized(p)
    pa = p.sum(axis=1)
    pb = p.sum(axis=0)
    mask = p > EPS
    terms = p[mask] * (np.log2(p[mask]) - np.log2(np.outer(pa, pb)[mask]))
    return max(0.0, float(terms.sum()))


def conditional_mutual_information(joint: np.ndarray) -> float:
    """I(A;B|C) in bits from a joint table over (A, B, C)."""
    p = np.asarray(joint, dtype=float)
    if p.ndim != 3:
        raise ParameterError("conditional_mutual_information expects a 3-D joint table")
    _check_normalized(p)
    pc = p.sum(axis=(0, 1))
    pac = p.sum(axis=1)
    pbc = p.sum(axis=0)
    mask = p > EPS
    num = p * pc[None, None, :]
    den = pac[:, None, :] * pbc[None, :, :]
    terms = p[mask] * (np.log2(num[mask]) - np.log2(den[mask]))
    return max(0.0, float(terms.sum()))


def _joint5(channel: DMChannel, puxx: np.ndarray) -> np.ndarray:
    return np.einsum("uab,abY,bZ->uabYZ", puxx, channel.py1_given_x1x2, channel.py2_given_x2)


def _rates_from_joint5(j5: np.ndarray):
    """(I(X1,X2;Y1|U), I(U;Y2), I(X1,X2;Y1)) from the full induced joint."""
    u, x1, x2, y1, y2 = j5.shape
    cloud = mutual_information(j5.sum(axis=(1, 2, 3)))
    total = mutual_information(j5.sum(axis=(0, 4)).reshape(x1 * x2, y1))
    sat = conditional_mutual_information(
        j5.sum(axis=4).transpose(1, 2, 3, 0).reshape(x1 * x2, y1, u)
    )
    return sat, cloud, total


def inner_thm1_point(channel: DMChannel, d: InnerDecomposition) -> ConstraintSet:
    """Superposition rates at one decomposition: the satellite stream is
    capped by I(X1,X2;Y1|U) (this equals I(X1;Y1|U) whenever x2 is a
    deterministic function of (u, x1)), the cloud by I(U;Y2), and the pair
    by I(X1,X2;Y1)."""
    if d.px2_given_ux1.shape[1:] != (channel.x1_size, channel.x2_size):
        raise ParameterError("decomposition alphabets do not match the channel")
    sat, cloud, total = _rates_from_joint5(_joint5(channel, d.joint_uxx()))
    return ConstraintSet(sat, cloud, total, provenance="dm-inner")


def outer_thm2_point(channel: DMChannel, j: OuterJoint) -> ConstraintSet:
    """Converse-side caps at one joint: r2 <= I(U;Y2) and the sum capped by
    min(I(X1,X2;Y1|U) + I(U;Y2), I(X1,X2;Y1))."""
    if j.puxx.shape[1:] != (channel.x1_size, channel.x2_size):
        raise ParameterError("joint alphabets do not match the channel")
    sat, cloud, total = _rates_from_joint5(_joint5(channel, j.puxx))
    return ConstraintSet(math.inf, cloud, min(sat + cloud, total), provenance="dm-outer")


# ---------------------------------------------------------------------------
# condition checks
# ---------------------------------------------------------------------------

def _mi_batch(j: np.ndarray) -> np.ndarray:
    # j: (n, A, B) joint tables
    pa = j.sum(axis=2)
    pb = j.sum(axis=1)
    den = pa[:, :, None] * pb[:, None, :]
    out = np.where(j > EPS, j * (np.log2(np.maximum(j, EPS)) - np.log2(np.maximum(den, EPS))), 0.0)
    return np.maximum(0.0, out.sum(axis=(1, 2)))


def _cmi_batch(j: np.ndarray) -> np.ndarray:
    # j: (n, A, B, C) joint tables -> I(A;B|C) per row
    pc = j.sum(axis=(1, 2))
    pac = j.sum(axis=2)
    pbc = j.sum(axis=1)
    num = j * pc[:, None, None, :]
    den = pac[:, :, None, :] * pbc[:, None, :, :]
    out = np.where(j > EPS, j * (np.log2(np.maximum(num, EPS)) - np.log2(np.maximum(den, EPS))), 0.0)
    return np.maximum(0.0, out.sum(axis=(1, 2, 3)))


def _gaps_more_capable(channel: DMChannel, pxx: np.ndarray) -> np.ndarray:
    n, x1, x2 = pxx.shape
    jy1 = np.einsum("nab,abY->nabY", pxx, channel.py1_given_x1x2).reshape(n, x1 * x2, -1)
    jy2 = np.einsum("nab,bZ->nabZ", pxx, channel.py2_given_x2).reshape(n, x1 * x2, -1)
    return _mi_batch(jy1) - _mi_batch(jy2)


def _gaps_strong_interference(channel: DMChannel, pxx: np.ndarray) -> np.ndarray:
    jy1 = np.einsum("nab,abY->nbYa", pxx, channel.py1_given_x1x2)
    jy2 = np.einsum("nab,bZ->nbZa", pxx, channel.py2_given_x2)
    return _cmi_batch(jy1) - _cmi_batch(jy2)


def _simplex_grid(k: int, density: int) -> np.ndarray:
    count = math.comb(density + k - 1, k - 1)
    if count > 200_000:
        raise ParameterError(f"simplex grid of {count} points is too large")
    pts = []
    for cuts in itertools.combinations(range(density + k - 1), k - 1):
        prev = -1
        comp = []
        for c in cuts:
            comp.append(c - prev - 1)
            prev = c
        comp.append(density + k - 2 - prev)
        pts.append(comp)
    return np.asarray(pts, dtype=float) / density


def _refine_minimum(channel, gap_fn, p0: np.ndarray, steps: int) -> tuple[float, np.ndarray]:
    """Coordinate descent pushing a candidate input distribution toward a
    condition violation; returns the lowest gap reached."""
    shape = p0.shape
    flat = p0.ravel().copy()
    best = float(gap_fn(channel, flat.reshape((1,) + shape))[0])
    step = 0.125
    for _ in range(steps + 1):  # initial step plus `steps` halvings
        improved = True
        while improved:
            improved = False
            for i in range(flat.size):
                for sgn in (1.0, -1.0):
                    cand = flat.copy()
                    cand[i] = max(0.0, cand[i] + sgn * step)
                    tot = cand.sum()
                    if tot <= 0:
                        continue
                    cand /= tot
                    val = float(gap_fn(channel, cand.reshape((1,) + shape))[0])
                    if val < best - 1e-13:
                        best, flat, improved = val, cand, True
        step /= 2.0
    return best, flat.reshape(shape)


def _condition_verdict(channel: DMChannel, search: SearchConfig, gap_fn) -> Verdict:
    k = channel.x1_size * channel.x2_size
    pools = []
    if search.grid_density > 0:
        pools.append(_simplex_grid(k, search.grid_density))
    if search.samples > 0:
        rng = np.random.default_rng([search.seed, 7])
        pools.append(rng.dirichlet(np.ones(k), size=search.samples))
    if not pools:
        return Verdict("inconclusive", math.nan)
    cand = np.concatenate(pools).reshape(-1, channel.x1_size, channel.x2_size)
    gaps = gap_fn(channel, cand)
    order = np.argsort(gaps)
    min_gap = float(gaps[order[0]])
    witness = cand[order[0]]
    if min_gap < -VIOLATION_TOL:
        return Verdict("violated", min_gap, witness)
    if search.refine_steps > 0:
        for idx in order[: min(5, order.size)]:
            val, point = _refine_minimum(channel, gap_fn, cand[idx], search.refine_steps)
            if val < min_gap:
                min_gap, witness = val, point
            if min_gap < -VIOLATION_TOL:
                return Verdict("violated", min_gap, witness)
    return Verdict("holds", min_gap)


def check_more_capable(channel: DMChannel, search: SearchConfig = SearchConfig()) -> Verdict:
    """Search for an input distribution with I(X1,X2;Y1) < I(X1,X2;Y2).

    "holds" means no violation was found (evidence, not proof); "violated"
    carries the witness distribution.
    """
    return _condition_verdict(channel, search, _gaps_more_capable)


def check_strong_interference(channel: DMChannel, search: SearchConfig = SearchConfig()) -> Verdict:
    """Same search for the condition I(X2;Y1|X1) >= I(X2;Y2|X1)."""
    return _condition_verdict(channel, search, _gaps_strong_interference)


# ---------------------------------------------------------------------------
# region searches
# ---------------------------------------------------------------------------

def _support_value(caps: tuple[float, float, float], w1: float, w2: float) -> float:
    r1, r2, s = caps
    verts = [(min(r1, s), 0.0), (0.0, min(r2, s))]
    if r1 + r2 <= s:
        verts.append((r1, r2))
    else:
        if 0.0 <= s - r2 <= r1:
            verts.append((s - r2, r2))
        if 0.0 <= s - r1 <= r2:
            verts.append((r1, s - r1))
    return max(w1 * vx + w2 * vy for vx, vy in verts)


def _coordinate_candidates(vectors: list[np.ndarray], step: float):
    cands = []
    for vi, v in enumerate(vectors):
        if v.size == 1:
            continue
        for i in range(v.size):
            for sgn in (1.0, -1.0):
                c = v.copy()
                c[i] = max(0.0, c[i] + sgn * step)
                tot = c.sum()
                if tot <= 0:
                    continue
                cands.append((vi, c / tot))
        if v.size > 2:
            # pairwise mass transfers keep the other coordinates untouched,
            # which matters near sparse optima
            for i in range(v.size):
                if v[i] <= 0.0:
                    continue
                d = min(step, v[i])
                for j in range(v.size):
                    if j == i:
                        continue
                    c = v.copy()
                    c[i] -= d
                    c[j] += d
                    cands.append((vi, c))
    return cands


def _climb(vectors: list[np.ndarray], values_fn, max_accepts: int = 240) -> float:
    """Steepest-ascent coordinate hill climb with step halving (initial step
    1/8, halved down to 1/2048): all single-coordinate perturbations and
    pairwise mass transfers are evaluated in one batch, the best is taken if
    it improves, and the step is halved once nothing helps."""
    best = float(values_fn(vectors, [(0, vectors[0].copy())])[0])
    step = 0.125
    for _ in range(9):
        while max_accepts > 0:
            cands = _coordinate_candidates(vectors, step)
            if not cands:
                return best
            vals = values_fn(vectors, cands)
            k = int(np.argmax(vals))
            if vals[k] > best + 1e-12:
                vi, c = cands[k]
                vectors[vi] = c
                best = float(vals[k])
                max_accepts -= 1
            else:
                break
        step /= 2.0
    return best


def _inner_vectors_to_caps(channel, u_size, vectors):
    pu = vectors[0]
    px1 = vectors[1]
    rows = np.stack(vectors[2:]).reshape(u_size, channel.x1_size, channel.x2_size)
    puxx = np.einsum("u,a,uab->uab", pu, px1, rows)
    return _rates_from_joint5(_joint5(channel, puxx))


def _rates_batch(channel: DMChannel, P: np.ndarray):
    """(sat, cloud, total) arrays for a batch of joints P over (u, x1, x2)."""
    j5 = np.einsum("nuab,abY,bZ->nuabYZ", P, channel.py1_given_x1x2, channel.py2_given_x2)
    n, u, x1, x2, y1, y2 = j5.shape
    cloud = _mi_batch(j5.sum(axis=(2, 3, 4)))
    total = _mi_batch(j5.sum(axis=(1, 5)).reshape(n, x1 * x2, y1))
    sat = _cmi_batch(j5.sum(axis=5).transpose(0, 2, 3, 4, 1).reshape(n, x1 * x2, y1, u))
    return sat, cloud, total


def _support_batch(r1, r2, s, w1, w2):
    # polygon support function; caps are first clipped by the sum cap, which
    # leaves the polygon unchanged but keeps +inf out of the arithmetic
    r1 = np.minimum(r1, s)
    r2 = np.minimum(r2, s)
    best = np.maximum(w1 * r1, w2 * r2)
    neg = -np.inf
    corner = np.where(r1 + r2 <= s, w1 * r1 + w2 * r2, neg)
    x = s - r2
    c2 = np.where((x >= 0) & (x <= r1), w1 * x + w2 * r2, neg)
    y = s - r1
    c3 = np.where((y >= 0) & (y <= r2), w1 * r1 + w2 * y, neg)
    return np.maximum(best, np.maximum(corner, np.maximum(c2, c3)))


def _level_batch(r1, r2, s, t):
    reach = np.minimum(r2, s)
    return np.where(reach >= t, np.minimum(r1, s - t), reach - t)


def _canonical_inner_starts(channel: DMChannel, u_size: int):
    x1s, x2s = channel.x1_size, channel.x2_size
    starts = []
    for rule in ("cloud", "forward", "mix", "softcloud"):
        rows = np.zeros((u_size, x1s, x2s))
        for u in range(u_size):
            for a in range(x1s):
                if rule == "cloud":
                    rows[u, a, u % x2s] = 1.0
                elif rule == "forward":
                    rows[u, a, a % x2s] = 1.0
                elif rule == "mix":
                    rows[u, a, (a + u) % x2s] = 1.0
                else:
                    # soft satellite rows: interior points reach the basins
                    # that deterministic mappings wall off
                    rows[u, a, :] = 0.25 / x2s
                    rows[u, a, u % x2s] += 0.75
        starts.append([np.full(u_size, 1.0 / u_size), np.full(x1s, 1.0 / x1s), rows])
    return starts


def _level_value(caps, t: float) -> float:
    # best r1 of the polygon at cloud-rate level t; infeasible configurations
    # are scored by how far their r2 reach falls short, so climbs are pulled
    # toward feasibility first
    r1, r2, ssum = caps
    reach = min(r2, ssum)
    if reach >= t:
        return min(r1, ssum - t)
    return reach - t


def _objective_schedule(r2span: float):
    objs = [("corner", w) for w in _CORNER_WEIGHTS]
    if r2span > 0:
        objs += [("level", t) for t in np.linspace(0.0, r2span, _LEVELS)[1:-1]]
    return objs


def _pool_search(starts, random_start, caps_of, caps_batch, budget: int, seed_key):
    """Shared search driver: corner-weight climbs from every canonical start,
    level continuation passes in both directions, then Dirichlet restarts
    cycling the whole objective schedule. Larger budgets extend the restart
    sequence, so the pool only ever grows."""
    if budget <= 0:
        raise ParameterError("search budget must be positive")
    pool = []

    def values_fn(kind, arg):
        def fn(vectors, cands):
            r1, r2, ssum = caps_batch(vectors, cands)
            if kind == "corner":
                return _support_batch(r1, r2, ssum, arg, 1.0 - arg)
            return _level_batch(r1, r2, ssum, arg)
        return fn

    def climb_from(vectors, kind, arg):
        vectors = [v.copy() for v in vectors]
        _climb(vectors, values_fn(kind, arg))
        pool.append(vectors)
        return vectors

    for start in starts:
        for w in _CORNER_WEIGHTS:
            climb_from(start, "corner", w)

    r2span = max(min(caps_of(v)[1], caps_of(v)[2]) for v in pool)
    schedule = _objective_schedule(r2span)
    levels = [arg for kind, arg in schedule if kind == "level"]
    # continuation in both directions: each level climb is warm-started at the
    # neighbouring level's endpoint (traces frontiers that no single linear
    # scalarization can expose); the two passes explore different basins
    current = max(pool, key=lambda v: _support_value(caps_of(v), 0.5, 0.5))
    for t in levels:
        current = climb_from(current, "level", t)
    current = max(pool, key=lambda v: _level_value(caps_of(v), r2span))
    for t in reversed(levels):
        current = climb_from(current, "level", t)

    rng = np.random.default_rng(seed_key)
    restarts = budget // _MOVES_PER_RESTART
    for k in range(restarts):
        kind, arg = schedule[k % len(schedule)]
        climb_from(random_start(rng), kind, arg)
    return pool


def _inner_pool(channel: DMChannel, budget: int, seed: int, u_size: int):
    x1s, x2s = channel.x1_size, channel.x2_size
    starts = [[pu, px1] + list(rows.reshape(-1, x2s))
              for pu, px1, rows in _canonical_inner_starts(channel, u_size)]

    def caps_of(vs):
        return _inner_vectors_to_caps(channel, u_size, vs)

    def caps_batch(vectors, cands):
        P = np.empty((len(cands), u_size, x1s, x2s))
        for k, (vi, c) in enumerate(cands):
            vs = list(vectors)
            vs[vi] = c
            rows = np.stack(vs[2:]).reshape(u_size, x1s, x2s)
            P[k] = vs[0][:, None, None] * vs[1][None, :, None] * rows
        return _rates_batch(channel, P)

    def random_start(rng):
        return [rng.dirichlet(np.ones(u_size)), rng.dirichlet(np.ones(x1s))] + [
            rng.dirichlet(np.ones(x2s)) for _ in range(u_size * x1s)]

    out = []
    for vectors in _pool_search(starts, random_start, caps_of, caps_batch,
                                budget, [seed, 11]):
        out.append((vectors[0], vectors[1],
                    np.stack(vectors[2:]).reshape(u_size, x1s, x2s)))
    return out


def _canonical_outer_starts(channel: DMChannel, u_size: int):
    x1s, x2s = channel.x1_size, channel.x2_size
    uniform = np.full((u_size, x1s, x2s), 1.0 / (u_size * x1s * x2s))
    cloud = np.zeros((u_size, x1s, x2s))
    for a in range(x1s):
        for b in range(x2s):
            cloud[b % u_size, a, b] += 1.0 / (x1s * x2s)
    return [uniform, cloud]


def _outer_pool(channel: DMChannel, budget: int, seed: int, u_size: int):
    x1s, x2s = channel.x1_size, channel.x2_size
    starts = [[p.ravel()] for p in _canonical_outer_starts(channel, u_size)]

    def caps_of(vs):
        sat, cloud, total = _rates_from_joint5(
            _joint5(channel, vs[0].reshape(u_size, x1s, x2s)))
        return math.inf, cloud, min(sat + cloud, total)

    def caps_batch(vectors, cands):
        P = np.stack([c for _, c in cands]).reshape(-1, u_size, x1s, x2s)
        sat, cloud, total = _rates_batch(channel, P)
        return np.full_like(cloud, np.inf), cloud, np.minimum(sat + cloud, total)

    def random_start(rng):
        return [rng.dirichlet(np.ones(u_size * x1s * x2s))]

    return [vs[0].reshape(u_size, x1s, x2s)
            for vs in _pool_search(starts, random_start, caps_of, caps_batch,
                                   budget, [seed, 13])]


def inner_region_search(
    channel: DMChannel, budget: int = 2000, seed: int = 0,
    u_size: int | None = None, r2_grid_size: int = 201,
) -> Frontier:
    """Frontier of the superposition inner bound found by randomized search."""
    u_size = u_size or channel.default_u_size()
    caps = []
    for pu, px1, rows in _inner_pool(channel, budget, seed, u_size):
        sat, cloud, total = _rates_from_joint5(
            _joint5(channel, np.einsum("u,a,uab->uab", pu, px1, rows)))
        caps.append((sat, cloud, total))
    caps = np.asarray(caps)
    return frontier_from_caps(caps[:, 0], caps[:, 1], caps[:, 2], r2_grid_size,
                              provenance="dm-inner")


def outer_region_search(
    channel: DMChannel, budget: int = 2000, seed: int = 0,
    u_size: int | None = None, r2_grid_size: int = 201,
) -> Frontier:
    """Frontier of the converse-side bound found by randomized search.

    The free-joint search is complemented by the induced joints of the inner
    search's pool (same budget and seed): every product-form input is also a
    legal converse joint, and evaluating it there guarantees the sampled
    outer frontier dominates the sampled inner frontier, as the theory
    requires.
    """
    u_size = u_size or channel.default_u_size()
    joints = _outer_pool(channel, budget, seed, u_size)
    joints += [np.einsum("u,a,uab->uab", pu, px1, rows)
               for pu, px1, rows in _inner_pool(channel, budget, seed, u_size)]
    caps = []
    for puxx in joints:
        sat, cloud, total = _rates_from_joint5(_joint5(channel, puxx))
        caps.append((math.inf, cloud, min(sat + cloud, total)))
    caps = np.asarray(caps)
    return frontier_from_caps(caps[:, 0], caps[:, 1], caps[:, 2], r2_grid_size,
                              provenance="dm-outer")


# ---------------------------------------------------------------------------
# serialization and sampling
# ---------------------------------------------------------------------------

def channel_from_dict(doc: dict) -> DMChannel:
    try:
        py2 = np.asarray(doc["py2_given_x2"], dtype=float)
        py1 = np.asarray(doc["py1_given_x1x2"], dtype=float)
        sizes = {k: int(doc[k]) for k in ("x1_size", "x2_size", "y1_size", "y2_size")}
    except (KeyError, TypeError, ValueError) as exc:
        raise ParameterError(f"malformed channel document: {exc}") from exc
    if py2.shape != (sizes["x2_size"], sizes["y2_size"]):
        raise ParameterError(f"py2_given_x2 shape {py2.shape} does not match declared sizes")
    if py1.shape != (sizes["x1_size"], sizes["x2_size"], sizes["y1_size"]):
        raise ParameterError(f"py1_given_x1x2 shape {py1.shape} does not match declared sizes")
    _check_rows(py2, "py2_given_x2", tol=LOAD_TOL)
    _check_rows(py1, "py1_given_x1x2", tol=LOAD_TOL)
    py2 = np.clip(py2, 0.0, None)
    py1 = np.clip(py1, 0.0, None)
    return DMChannel(py2 / py2.sum(-1, keepdims=True), py1 / py1.sum(-1, keepdims=True))


def channel_to_dict(channel: DMChannel) -> dict:
    return {
        "x1_size": channel.x1_size,
        "x2_size": channel.x2_size,
        "y1_size": channel.y1_size,
        "y2_size": channel.y2_size,
        "py2_given_x2": channel.py2_given_x2.tolist(),
        "py1_given_x1x2": channel.py1_given_x1x2.tolist(),
    }


def load_channel(path: str | Path) -> DMChannel:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParameterError(f"invalid channel JSON: {exc}") from exc
    return channel_from_dict(doc)


def save_channel(channel: DMChannel, path: str | Path):
    with open(path, "w") as fh:
        json.dump(channel_to_dict(channel), fh, indent=2)
        fh.write("\n")


def sample_channel(
    x1_size: int, x2_size: int, y1_size: int, y2_size: int,
    seed: int = 0, concentration: float = 1.0,
) -> DMChannel:
    """Random Z-structured channel with Dirichlet rows."""
    rng = np.random.default_rng([seed, 3])
    py2 = rng.dirichlet(np.full(y2_size, concentration), size=x2_size)
    py1 = rng.dirichlet(np.full(y1_size, concentration), size=(x1_size, x2_size))
    return DMChannel(py2, py1)
