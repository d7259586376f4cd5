"""Online maximization of sums of matroid rank functions under a matroid
constraint: fractional online algorithm, coupled randomized rounding,
covering machinery, and brute-force oracles."""

from .errors import (CapabilityError, DegenerateInstanceError,
                     EstimationFailureError, InvalidInputError, LoopError)
from .fractional import (Arrival, Instance, KnownN, UnknownN, AlgGState,
                         fractional_profit, init_state, process_arrival,
                         run_algg, sample_alpha)
from .matroids import (Explicit, Graphic, MatroidSpec, Partition, Uniform,
                       restrict, spec_from_dict, spec_to_dict)
from .offline import brute_force_opt, check_lp1, check_lp2, decompose_optimal, \
    greedy_opt
from .polytope import (EPS, headroom, in_polytope, maximal_tight_set,
                       min_slack)
from .rounding import CoupledTrace, full_pipeline, integral_profit, run_coupled
from .weighted import (WeightStats, bucketize, run_weighted,
                       verify_bucket_bound, weight_stats)

__version__ = "0.1.0"

__all__ = [
    "AlgGState", "Arrival", "CapabilityError", "CoupledTrace",
    "DegenerateInstanceError", "EPS", "EstimationFailureError", "Explicit",
    "Graphic", "Instance", "InvalidInputError", "KnownN", "LoopError",
    "MatroidSpec", "Partition", "Uniform", "UnknownN", "WeightStats",
    "brute_force_opt", "bucketize", "check_lp1", "check_lp2",
    "decompose_optimal", "fractional_profit", "full_pipeline", "greedy_opt",
    "headroom", "in_polytope", "init_state", "integral_profit",
    "maximal_tight_set", "min_slack", "process_arrival", "restrict",
    "run_algg", "run_coupled", "run_weighted", "sample_alpha",
    "spec_from_dict", "spec_to_dict", "verify_bucket_bound", "weight_stats",
]
