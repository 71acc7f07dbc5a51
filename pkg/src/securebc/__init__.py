"""Finite-alphabet toolkit for secure broadcasting with transmitter side-information.

Exact rate-region computation over small alphabets plus Monte Carlo
validation of the double-binning random-coding scheme that achieves them.
"""

from .channel import (
    ChannelSpec,
    CodingScheme,
    aux_conditionals,
    induced_joint,
    load_spec,
    save_spec,
    validate_channel,
    validate_scheme,
)
from .codec import (
    Codebook,
    CodebookConfig,
    Estimate,
    RateAllocation,
    SimulationReport,
    assign_rates,
    binning_feasibility,
    build_codebook,
    decode,
    encode,
    estimate_leakage,
    is_typical,
    simulate,
    transmit,
)
from .errors import (
    CapacityError,
    DegenerateEventError,
    DegenerateSchemeError,
    DomainError,
    ParseError,
)
from .probcore import JointDistribution, Variable
from .region import (
    CornerPoints,
    RateBounds,
    RateRegion,
    contains_point,
    contains_region,
    convex_hull,
    corner_points,
    eval_liu,
    eval_marton,
    eval_secure_si,
    eval_steinberg,
    polygon,
    search_frontier,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "ChannelSpec",
    "Codebook",
    "CodebookConfig",
    "CodingScheme",
    "CornerPoints",
    "DegenerateEventError",
    "DegenerateSchemeError",
    "DomainError",
    "Estimate",
    "JointDistribution",
    "ParseError",
    "RateAllocation",
    "RateBounds",
    "RateRegion",
    "SimulationReport",
    "Variable",
    "assign_rates",
    "aux_conditionals",
    "binning_feasibility",
    "build_codebook",
    "contains_point",
    "contains_region",
    "convex_hull",
    "corner_points",
    "decode",
    "encode",
    "estimate_leakage",
    "eval_liu",
    "eval_marton",
    "eval_secure_si",
    "eval_steinberg",
    "induced_joint",
    "is_typical",
    "load_spec",
    "polygon",
    "save_spec",
    "search_frontier",
    "simulate",
    "transmit",
    "validate_channel",
    "validate_scheme",
]
