"""Standard-form channel parameters, interference regimes, and condition checks.

The channel is kept in standard form: both direct links have gain 1, both
noises are N(0, 1), and the only coefficients left are the interference gain
``a`` and the transmit powers ``p1`` (primary) and ``p2`` (cognitive).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import ParameterError

__all__ = [
    "ChannelParams",
    "RegimeTag",
    "Regime",
    "regime_thresholds",
    "classify_regime",
    "is_strong_interference",
    "more_capable_sufficient",
    "redundancy_threshold",
]


@dataclass(frozen=True)
class ChannelParams:
    """Standard-form channel triple (a, p1, p2); noise variances are fixed at 1."""

    a: float
    p1: float
    p2: float

    def __post_init__(self):
        for name in ("a", "p1", "p2"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ParameterError(f"{name} must be a finite number, got {v!r}")
        if self.p1 < 0 or self.p2 < 0:
            raise ParameterError(f"powers must be nonnegative, got p1={self.p1}, p2={self.p2}")

    @property
    def abs_a(self) -> float:
        return abs(self.a)


class RegimeTag(Enum):
    WEAK = "Weak"
    STRONG_CAPACITY = "StrongCapacity"
    UNKNOWN_GAP = "UnknownGap"
    VERY_STRONG = "VeryStrong"
    ULTRA_STRONG = "UltraStrong"


@dataclass(frozen=True)
class Regime:
    """A regime tag together with the four |a| thresholds it was judged against.

    thresholds = (1, sqrt(1+p1/(1+p2)), sqrt(1+p1), sqrt(p1*p2)+sqrt(1+p1+p1*p2)),
    always nondecreasing, with equality throughout iff p1 == 0.
    """

    tag: RegimeTag
    thresholds: tuple[float, float, float, float]


def regime_thresholds(params: ChannelParams) -> tuple[float, float, float, float]:
    """The four |a| boundary values separating the capacity regimes."""
    p1, p2 = params.p1, params.p2
    t1 = 1.0
    t2 = math.sqrt(1.0 + p1 / (1.0 + p2))
    t3 = math.sqrt(1.0 + p1)
    t4 = math.sqrt(p1 * p2) + math.sqrt(1.0 + p1 + p1 * p2)
    return (t1, t2, t3, t4)


def classify_regime(params: ChannelParams) -> Regime:
    """Classify |a| against the regime thresholds.

    Boundary values go to the regime with known capacity; when several rows
    admit the same |a|, the larger-|a| row wins. Checking from the top down
    implements both rules at once.
    """
    t = regime_thresholds(params)
    m = params.abs_a
    if m >= t[3]:
        tag = RegimeTag.ULTRA_STRONG
    elif m >= t[2]:
        tag = RegimeTag.VERY_STRONG
    elif m > t[1]:
        tag = RegimeTag.UNKNOWN_GAP
    elif m >= t[0]:
        tag = RegimeTag.STRONG_CAPACITY
    else:
        tag = RegimeTag.WEAK
    return Regime(tag=tag, thresholds=t)


def is_strong_interference(params: ChannelParams) -> bool:
    """True iff a^2 >= 1, the gate for the correlation-swept outer bound."""
    return params.a * params.a >= 1.0


def more_capable_sufficient(params: ChannelParams) -> bool:
    """Sufficient condition |a| >= 1 + sqrt(p1/p2) for the primary receiver
    to be the more capable one.

    Derived for jointly Gaussian inputs at the worst-case input correlation;
    it is only known to be sufficient, not equivalent.
    """
    if params.p2 <= 0:
        raise ParameterError("more_capable_sufficient requires p2 > 0")
    return params.abs_a >= 1.0 + math.sqrt(params.p1 / params.p2)


def redundancy_threshold(alpha: float, p1: float, p2: float) -> float:
    """sqrt(alpha*p1*p2) + sqrt(1 + p1 + alpha*p1*p2).

    The |a| level above which the sum constraint of the superposition region
    is implied by the two single-rate constraints at power split ``alpha``.
    Nondecreasing in alpha; equals sqrt(1+p1) at alpha=0.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ParameterError(f"alpha must lie in [0, 1], got {alpha!r}")
    if p1 < 0 or p2 < 0:
        raise ParameterError("powers must be nonnegative")
    prod = alpha * p1 * p2
    return math.sqrt(prod) + math.sqrt(1.0 + p1 + prod)
