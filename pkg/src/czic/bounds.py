"""Gaussian rate-bound families for the cognitive Z-interference channel.

Each operation maps (channel parameters + bound parameters) onto one
canonical ConstraintSet; the *_frontier builders sweep the bound parameters
and reduce the union of constraint sets to a sampled Pareto frontier.

All rates are bits per channel use (log base 2). Every formula uses |a|:
the achievable scheme can flip the sign of the shared codeword component,
so a negative interference gain never shrinks a region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelParams, redundancy_threshold
from .errors import ParameterError, RegimeError, ValidityError
from .regions import ConstraintSet, Frontier, frontier_from_caps, upper_concave_envelope

__all__ = [
    "CorrelationTriple",
    "BoundParams",
    "BOUND_IDS",
    "inner_lemma2",
    "outer_lemma1",
    "outer_cor1",
    "outer_cor2",
    "outer_cor3",
    "capacity_thm3",
    "capacity_cor4",
    "capacity_weak",
    "capacity_strong",
    "scalar_parameter_grid",
    "rho_axis",
    "bound_frontier",
    "lemma1_frontier_boundary2d",
]

ALPHA_GRID_DEFAULT = 201
RHO_GRID_DEFAULT = 101
R2_GRID_DEFAULT = 401
PSD_TOL = 1e-12

#: Bound identifiers accepted by the CLI and by bound_frontier().
BOUND_IDS = ("inner", "lemma1", "cor1", "cor2", "cor3", "thm3", "cor4", "weak", "strongcap")


@dataclass(frozen=True)
class CorrelationTriple:
    """Correlations (U,X1), (U,X2), (X1,X2) of a jointly Gaussian triple.

    Any values in [-1, 1] are representable; only triples whose 3x3
    correlation matrix is PSD are usable in the outer bound:
    |rho12 - rho1*rho2| <= sqrt((1-rho1^2)(1-rho2^2)).
    """

    rho1: float
    rho2: float
    rho12: float

    def __post_init__(self):
        for name in ("rho1", "rho2", "rho12"):
            v = getattr(self, name)
            if not math.isfinite(v) or abs(v) > 1.0:
                raise ParameterError(f"{name} must lie in [-1, 1], got {v!r}")

    def psd_slack(self) -> float:
        return math.sqrt((1.0 - self.rho1**2) * (1.0 - self.rho2**2)) - abs(
            self.rho12 - self.rho1 * self.rho2
        )

    def is_valid(self, tol: float = PSD_TOL) -> bool:
        return self.psd_slack() >= -tol


@dataclass(frozen=True)
class BoundParams:
    """Scalar bound parameters: alpha = 1-rho2^2 (cognitive power split),
    beta = 1-rho1^2, gamma = rho12^2. Complements are derived, not stored."""

    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ParameterError(f"{name} must lie in [0, 1], got {v!r}")


def _check_alpha(alpha, name="alpha"):
    a = np.asarray(alpha, dtype=float)
    if np.any(np.isnan(a)) or np.any(a < 0.0) or np.any(a > 1.0):
        raise ParameterError(f"{name} must lie in [0, 1]")
    return a


def _require_strong(params: ChannelParams):
    if params.a * params.a < 1.0:
        raise RegimeError("|a| >=", 1.0)


# ---------------------------------------------------------------------------
# shared formula kernels (scalar ops and sweeps go through the same code)
# ---------------------------------------------------------------------------

def _r2_split_cap(p2, alpha):
    # (1/2) log2(1 + (1-alpha) p2 / (1 + alpha p2))
    return 0.5 * np.log2(1.0 + (1.0 - alpha) * p2 / (1.0 + alpha * p2))


def _r1_coherent_cap(a, p1, p2, alpha):
    # (1/2) log2(1 + (sqrt(p1) + |a| sqrt(alpha p2))^2)
    return 0.5 * np.log2(1.0 + (np.sqrt(p1) + abs(a) * np.sqrt(alpha * p2)) ** 2)


def _sum_coherent_cap(a, p1, p2, alpha):
    # (1/2) log2(1 + p1 + a^2 p2 + 2 |a| sqrt(alpha p1 p2))
    return 0.5 * np.log2(1.0 + p1 + a * a * p2 + 2.0 * abs(a) * np.sqrt(alpha * p1 * p2))


def _inner_caps(params, alpha):
    a, p1, p2 = params.a, params.p1, params.p2
    r1 = _r1_coherent_cap(a, p1, p2, alpha)
    r2 = _r2_split_cap(p2, alpha)
    s = _sum_coherent_cap(a, p1, p2, alpha)
    return r1, r2, s


def _thm3_caps(params, alpha):
    a, p1, p2 = params.a, params.p1, params.p2
    r2 = _r2_split_cap(p2, alpha)
    s1 = _r1_coherent_cap(a, p1, p2, alpha) + r2
    s2 = _sum_coherent_cap(a, p1, p2, alpha)
    return np.full_like(r2, np.inf), r2, np.minimum(s1, s2)


def _cor1_caps(params, gamma):
    a, p1, p2 = params.a, params.p1, params.p2
    s = 0.5 * np.log2(1.0 + p1 + a * a * p2 + 2.0 * abs(a) * np.sqrt(gamma * p1 * p2))
    r2 = 0.5 * np.log2(1.0 + (1.0 - gamma) * p2)
    return np.full_like(s, np.inf), r2, s


def _cor2_caps(params, alpha):
    a, p1, p2 = params.a, params.p1, params.p2
    r2 = _r2_split_cap(p2, alpha)
    s = _r1_coherent_cap(a, p1, p2, alpha) + r2
    return np.full_like(r2, np.inf), r2, s


def _cor3_caps(params, alpha, beta):
    a, p1, p2 = params.a, params.p1, params.p2
    r2 = _r2_split_cap(p2, alpha)
    s1 = 0.5 * np.log2(1.0 + (np.sqrt(beta * p1) + abs(a) * np.sqrt(alpha * p2)) ** 2) + r2
    coef = np.sqrt(alpha * beta) + np.sqrt((1.0 - alpha) * (1.0 - beta))
    s2 = 0.5 * np.log2(1.0 + p1 + a * a * p2 + 2.0 * abs(a) * coef * np.sqrt(p1 * p2))
    return np.full_like(r2, np.inf), r2, np.minimum(s1, s2)


def _cor4_caps(params, alpha):
    a, p1, p2 = params.a, params.p1, params.p2
    r1 = _r1_coherent_cap(a, p1, p2, alpha)
    r2 = _r2_split_cap(p2, alpha)
    return r1, r2, np.full_like(r1, np.inf)


def _weak_caps(params, alpha):
    a, p1, p2 = params.a, params.p1, params.p2
    num = (np.sqrt(p1) + abs(a) * np.sqrt(alpha * p2)) ** 2
    r1 = 0.5 * np.log2(1.0 + num / (1.0 + a * a * (1.0 - alpha) * p2))
    r2 = 0.5 * np.log2(1.0 + (1.0 - alpha) * p2)
    return r1, r2, np.full_like(r1, np.inf)


def _strong_caps(params, alpha):
    a, p1, p2 = params.a, params.p1, params.p2
    s = _sum_coherent_cap(a, p1, p2, alpha)
    r2 = 0.5 * np.log2(1.0 + (1.0 - alpha) * p2)
    return np.full_like(s, np.inf), r2, s


def _lemma1_caps(params, rho1, rho2, rho12):
    a, p1, p2 = params.a, params.p1, params.p2
    # complements clipped at 0: squaring sqrt-valued grid points can stray an
    # ulp above 1, and sqrt/log of the negative residue would poison the sweep
    c1 = np.maximum(0.0, 1.0 - rho1 * rho1)
    c2 = np.maximum(0.0, 1.0 - rho2 * rho2)
    c12 = np.maximum(0.0, 1.0 - rho12 * rho12)
    r2_a = 0.5 * np.log2((1.0 + p2) / (1.0 + p2 * c2))
    sum_a = 0.5 * np.log2(
        1.0 + (np.sqrt(c1 * p1) + abs(a) * np.sqrt(c2 * p2)) ** 2
    ) + r2_a
    sum_b = 0.5 * np.log2(1.0 + p1 + a * a * p2 + 2.0 * abs(a) * np.abs(rho12) * np.sqrt(p1 * p2))
    r2_b = 0.5 * np.log2(1.0 + c12 * p2)
    return np.minimum(r2_a, r2_b), np.minimum(sum_a, sum_b)


# ---------------------------------------------------------------------------
# single-point operations
# ---------------------------------------------------------------------------

def _tag(params, extra):
    return f"a={params.a:g},p1={params.p1:g},p2={params.p2:g};{extra}"


def inner_lemma2(params: ChannelParams, alpha: float):
    """Superposition-coding achievable set at cognitive power split alpha."""
    _check_alpha(alpha)
    r1, r2, s = _inner_caps(params, np.float64(alpha))
    return ConstraintSet(float(r1), float(r2), float(s), _tag(params, f"inner[alpha={alpha:g}]"))


def outer_lemma1(params: ChannelParams, rho: CorrelationTriple):
    """Correlation-swept outer-bound set; needs a^2 >= 1 and a PSD-valid triple."""
    _require_strong(params)
    if not rho.is_valid():
        raise ValidityError(
            f"correlation triple {rho} violates the PSD condition "
            f"|rho12 - rho1*rho2| <= sqrt((1-rho1^2)(1-rho2^2))"
        )
    r2cap, sumcap = _lemma1_caps(
        params, np.float64(rho.rho1), np.float64(rho.rho2), np.float64(rho.rho12)
    )
    return ConstraintSet(math.inf, float(r2cap), float(sumcap), _tag(params, f"lemma1[{rho}]"))


def outer_cor1(params: ChannelParams, gamma: float):
    """Sum-and-r2 outer set at input correlation square gamma (the reference
    outer bound the new one is compared against)."""
    _check_alpha(gamma, "gamma")
    _require_strong(params)
    _, r2, s = _cor1_caps(params, np.float64(gamma))
    return ConstraintSet(math.inf, float(r2), float(s), _tag(params, f"cor1[gamma={gamma:g}]"))


def outer_cor2(params: ChannelParams, alpha: float):
    _check_alpha(alpha)
    _require_strong(params)
    _, r2, s = _cor2_caps(params, np.float64(alpha))
    return ConstraintSet(math.inf, float(r2), float(s), _tag(params, f"cor2[alpha={alpha:g}]"))


def outer_cor3(params: ChannelParams, alpha: float, beta: float):
    """Two-parameter outer set; beta = 1 reduces it exactly to the
    very-strong-interference capacity set at the same alpha."""
    _check_alpha(alpha)
    _check_alpha(beta, "beta")
    _require_strong(params)
    _, r2, s = _cor3_caps(params, np.float64(alpha), np.float64(beta))
    return ConstraintSet(math.inf, float(r2), float(s),
                         _tag(params, f"cor3[alpha={alpha:g},beta={beta:g}]"))


def capacity_thm3(params: ChannelParams, alpha: float, check_regime: bool = True):
    """Capacity set at split alpha for very strong interference,
    |a| >= sqrt(1 + p1).

    With check_regime=False the same formula family is evaluated outside the
    capacity regime, where it is only a bound.
    """
    _check_alpha(alpha)
    t3 = math.sqrt(1.0 + params.p1)
    if check_regime and params.abs_a < t3:
        raise RegimeError("|a| >=", t3)
    _, r2, s = _thm3_caps(params, np.float64(alpha))
    return ConstraintSet(math.inf, float(r2), float(s), _tag(params, f"thm3[alpha={alpha:g}]"))


def capacity_cor4(params: ChannelParams, alpha: float):
    """Rectangle capacity set at split alpha for ultra strong interference,
    |a| >= sqrt(p1*p2) + sqrt(1 + p1 + p1*p2) (the sum cap is never active)."""
    _check_alpha(alpha)
    t4 = redundancy_threshold(1.0, params.p1, params.p2)
    if params.abs_a < t4:
        raise RegimeError("|a| >=", t4)
    r1, r2, _ = _cor4_caps(params, np.float64(alpha))
    return ConstraintSet(float(r1), float(r2), math.inf, _tag(params, f"cor4[alpha={alpha:g}]"))


def capacity_weak(params: ChannelParams, alpha: float):
    """Weak-interference (|a| <= 1) capacity set at split alpha; the r1 cap is
    the dirty-paper rate with the un-cancelled cloud as extra noise."""
    _check_alpha(alpha)
    if params.abs_a > 1.0:
        raise RegimeError("|a| <=", 1.0)
    r1, r2, _ = _weak_caps(params, np.float64(alpha))
    return ConstraintSet(float(r1), float(r2), math.inf, _tag(params, f"weak[alpha={alpha:g}]"))


def capacity_strong(params: ChannelParams, alpha: float):
    """Capacity set for 1 <= |a| <= sqrt(1 + p1/(1+p2))."""
    _check_alpha(alpha)
    if params.abs_a < 1.0:
        raise RegimeError("|a| >=", 1.0)
    t2 = math.sqrt(1.0 + params.p1 / (1.0 + params.p2))
    if params.abs_a > t2:
        raise RegimeError("|a| <=", t2)
    _, r2, s = _strong_caps(params, np.float64(alpha))
    return ConstraintSet(math.inf, float(r2), float(s), _tag(params, f"strongcap[alpha={alpha:g}]"))


# ---------------------------------------------------------------------------
# sweep grids
# ---------------------------------------------------------------------------

def rho_axis(n: int = RHO_GRID_DEFAULT) -> np.ndarray:
    """Correlation axis with n points, spaced uniformly in rho^2.

    Odd n required; the squares {0, 1/m, ..., 1} (m = (n-1)/2) then line up
    exactly with the scalar grids below, which keeps sampled containment
    comparisons between the correlation sweep and the scalar sweeps exact.
    """
    if n < 3 or n % 2 == 0:
        raise ParameterError(f"rho grid size must be odd and >= 3, got {n}")
    m = (n - 1) // 2
    sq = np.sqrt(np.arange(m + 1) / m)
    return np.unique(np.concatenate([-sq, sq]))


def scalar_parameter_grid(
    params: ChannelParams, n_alpha: int = ALPHA_GRID_DEFAULT, n_rho: int = RHO_GRID_DEFAULT
) -> np.ndarray:
    """Shared sweep grid on [0, 1] for every scalar bound parameter.

    Union of: points spacing (1/2)log2((1+p2)/(1+alpha p2)) uniformly, points
    spacing (1/2)log2(1+(1-alpha) p2) uniformly, and the correlation squares
    {k/m}. Cap-uniform spacing keeps the frontier's r2 resolution even where
    the caps move fastest; the shared grid keeps the sampled region of each
    bound nested inside every bound that provably contains it.
    """
    if n_alpha < 2:
        raise ParameterError("alpha grid size must be >= 2")
    p2 = params.p2
    m = (n_rho - 1) // 2
    squares = np.arange(m + 1) / m
    if p2 <= 0:
        pieces = [np.linspace(0.0, 1.0, n_alpha), squares]
    else:
        top = 0.5 * math.log2(1.0 + p2)
        t = np.linspace(0.0, top, n_alpha)
        split = ((1.0 + p2) * np.exp2(-2.0 * t) - 1.0) / p2
        power = 1.0 - (np.exp2(2.0 * t) - 1.0) / p2
        pieces = [split, power, squares]
    grid = np.clip(np.concatenate(pieces), 0.0, 1.0)
    grid = np.union1d(grid, [0.0, 1.0])
    return grid


# ---------------------------------------------------------------------------
# frontier builders
# ---------------------------------------------------------------------------

def _alpha_family_frontier(caps_fn, params, bound_id, n_alpha, n_rho, r2_grid):
    grid = scalar_parameter_grid(params, n_alpha, n_rho)
    r1c, r2c, sc = caps_fn(params, grid)
    return frontier_from_caps(r1c, r2c, sc, r2_grid, provenance=bound_id)


def _cor3_frontier(params, n_alpha, n_rho, r2_grid):
    alpha = scalar_parameter_grid(params, n_alpha, n_rho)
    m = (n_rho - 1) // 2
    beta = np.arange(m + 1) / m
    A, B = np.meshgrid(alpha, beta, indexing="ij")
    r1c, r2c, sc = _cor3_caps(params, A.ravel(), B.ravel())
    return frontier_from_caps(r1c, r2c, sc, r2_grid, provenance="cor3")


def _lemma1_frontier(params, n_alpha, n_rho, r2_grid):
    axis = rho_axis(n_rho)
    R1, R2, R12 = np.meshgrid(axis, axis, axis, indexing="ij")
    r1 = R1.ravel()
    r2 = R2.ravel()
    r12 = R12.ravel()
    comp = np.maximum(0.0, 1.0 - r1 * r1) * np.maximum(0.0, 1.0 - r2 * r2)
    valid = np.abs(r12 - r1 * r2) <= np.sqrt(comp) + PSD_TOL
    r1, r2, r12 = r1[valid], r2[valid], r12[valid]

    # Correlations induced by the superposition scheme itself,
    # (rho1, rho2, rho12) = (0, sqrt(1-alpha), sqrt(alpha)): PSD-boundary
    # points, added so the sampled outer region dominates the sampled
    # achievable region at every power split on the shared grid.
    alpha = scalar_parameter_grid(params, n_alpha, n_rho)
    r1 = np.concatenate([r1, np.zeros_like(alpha)])
    r2 = np.concatenate([r2, np.sqrt(1.0 - alpha)])
    r12 = np.concatenate([r12, np.sqrt(alpha)])

    r2cap, sumcap = _lemma1_caps(params, r1, r2, r12)
    return frontier_from_caps(
        np.full_like(r2cap, np.inf), r2cap, sumcap, r2_grid, provenance="lemma1"
    )


def lemma1_frontier_boundary2d(
    params: ChannelParams,
    rho_grid: int = RHO_GRID_DEFAULT,
    r2_grid: int = R2_GRID_DEFAULT,
    alpha_grid: int = ALPHA_GRID_DEFAULT,
) -> Frontier:
    """Fast 2-D variant of the correlation sweep, restricted to the PSD
    boundary |rho12 - rho1 rho2| = sqrt((1-rho1^2)(1-rho2^2)) with the rho12
    sign that maximises the coherent sum cap.

    The second r2 cap (which breaks boundary optimality) is dropped here, so
    this frontier is only comparable against bounds that also drop it.
    """
    _require_strong(params)
    axis = rho_axis(rho_grid)
    # rho2 controls the only r2 cap left; give it the cap-uniform resolution
    # the scalar sweeps use, on top of the plain axis
    sq = np.sqrt(1.0 - scalar_parameter_grid(params, alpha_grid, rho_grid))
    axis2 = np.union1d(axis, np.concatenate([sq, -sq]))
    R1, R2 = np.meshgrid(axis, axis2, indexing="ij")
    r1 = R1.ravel()
    r2 = R2.ravel()
    s = np.sqrt((1.0 - r1 * r1) * (1.0 - r2 * r2))
    prod = r1 * r2
    r12 = np.clip(np.where(prod >= 0, prod + s, prod - s), -1.0, 1.0)

    a, p1, p2 = params.a, params.p1, params.p2
    c1 = np.maximum(0.0, 1.0 - r1 * r1)
    c2 = np.maximum(0.0, 1.0 - r2 * r2)
    r2cap = 0.5 * np.log2((1.0 + p2) / (1.0 + p2 * c2))
    sum_a = 0.5 * np.log2(
        1.0 + (np.sqrt(c1 * p1) + abs(a) * np.sqrt(c2 * p2)) ** 2
    ) + r2cap
    sum_b = 0.5 * np.log2(1.0 + p1 + a * a * p2 + 2.0 * abs(a) * np.abs(r12) * np.sqrt(p1 * p2))
    sumcap = np.minimum(sum_a, sum_b)
    return frontier_from_caps(
        np.full_like(r2cap, np.inf), r2cap, sumcap, r2_grid, provenance="lemma1-2d"
    )


def bound_frontier(
    bound_id: str,
    params: ChannelParams,
    alpha_grid: int = ALPHA_GRID_DEFAULT,
    rho_grid: int = RHO_GRID_DEFAULT,
    r2_grid: int = R2_GRID_DEFAULT,
    convexify: bool = False,
) -> Frontier:
    """Sampled frontier for one of the named bounds.

    Regime preconditions are enforced before any sweep; see BOUND_IDS for the
    accepted identifiers.
    """
    if bound_id not in BOUND_IDS:
        raise ParameterError(f"unknown bound id {bound_id!r}; expected one of {BOUND_IDS}")
    if bound_id == "inner":
        fr = _alpha_family_frontier(_inner_caps, params, "inner", alpha_grid, rho_grid, r2_grid)
    elif bound_id == "lemma1":
        _require_strong(params)
        fr = _lemma1_frontier(params, alpha_grid, rho_grid, r2_grid)
    elif bound_id == "cor1":
        _require_strong(params)
        fr = _alpha_family_frontier(_cor1_caps, params, "cor1", alpha_grid, rho_grid, r2_grid)
    elif bound_id == "cor2":
        _require_strong(params)
        fr = _alpha_family_frontier(_cor2_caps, params, "cor2", alpha_grid, rho_grid, r2_grid)
    elif bound_id == "cor3":
        _require_strong(params)
        fr = _cor3_frontier(params, alpha_grid, rho_grid, r2_grid)
    elif bound_id == "thm3":
        capacity_thm3(params, 0.0)  # regime gate
        fr = _alpha_family_frontier(_thm3_caps, params, "thm3", alpha_grid, rho_grid, r2_grid)
    elif bound_id == "cor4":
        capacity_cor4(params, 0.0)
        fr = _alpha_family_frontier(_cor4_caps, params, "cor4", alpha_grid, rho_grid, r2_grid)
    elif bound_id == "weak":
        capacity_weak(params, 0.0)
        fr = _alpha_family_frontier(_weak_caps, params, "weak", alpha_grid, rho_grid, r2_grid)
    else:  # strongcap
        capacity_strong(params, 0.0)
        fr = _alpha_family_frontier(_strong_caps, params, "strongcap", alpha_grid, rho_grid, r2_grid)
    if convexify:
        fr = upper_concave_envelope(fr)
        fr.provenance = bound_id
    return fr
