"""First-passage Brownian flights over fractal boundaries.

Thin wrapper around the compiled _bflights extension: boundary generators
(Koch prefractals, pivot-algorithm self-avoiding walks, analytic references),
box-counting dimension estimation, Whitney decompositions, walk-on-spheres
and lattice first-passage campaigns, and tail-exponent fits against the
predicted alpha/beta/survival exponents.
"""

from ._bflights import (
    Boundary,
    BflightsError,
    CampaignResult,
    InsufficientDataError,
    Scene,
    WhitneyDecomposition,
    box_count,
    campaign,
    dyadic_ladder,
    fit_dimension,
    koch,
    level_hit,
    line_reference,
    load_boundary,
    predict,
    saw,
    whitney_decompose,
)

__all__ = [
    "Boundary",
    "BflightsError",
    "CampaignResult",
    "InsufficientDataError",
    "Scene",
    "WhitneyDecomposition",
    "box_count",
    "campaign",
    "dyadic_ladder",
    "fit_dimension",
    "koch",
    "level_hit",
    "line_reference",
    "load_boundary",
    "predict",
    "saw",
    "whitney_decompose",
]
