"""Numerical toolkit for the Gaussian cognitive Z-interference channel:
inner/outer rate-region bounds and capacity formulas, frontier geometry,
a finite-alphabet oracle, and a random-coding Monte Carlo simulator."""

__version__ = "0.1.0"

from .channel import (ChannelParams, Regime, RegimeTag, classify_regime,
                      is_strong_interference, more_capable_sufficient,
                      redundancy_threshold, regime_thresholds)
from .regions import (ConstraintSet, Frontier, RatePair, contains, directed_gap,
                      frontier_from_caps, frontier_from_family, frontier_from_sets,
                      gap_curve, load_frontier, save_frontier, upper_concave_envelope)
from .bounds import (BOUND_IDS, BoundParams, CorrelationTriple, bound_frontier,
                     capacity_cor4, capacity_strong, capacity_thm3, capacity_weak,
                     inner_lemma2, lemma1_frontier_boundary2d, outer_cor1, outer_cor2,
                     outer_cor3, outer_lemma1, rho_axis, scalar_parameter_grid)
from .dm import (DMChannel, InnerDecomposition, OuterJoint, SearchConfig, Verdict,
                 check_more_capable, check_strong_interference,
                 conditional_mutual_information, inner_region_search, inner_thm1_point,
                 load_channel, mutual_information, outer_region_search, outer_thm2_point,
                 sample_channel, save_channel)
from .mc import (RateEstimates, SimConfig, TrialAggregate, estimate_rates, run_trials,
                 wilson_interval)
from .errors import (CodebookCapError, CzicError, EstimationError, ParameterError,
                     RegimeError, ValidityError)
