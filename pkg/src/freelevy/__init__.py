"""Numerics for freely infinitely divisible laws.

Free cumulant transforms from closed forms or Lévy–Khintchine triplets,
densities by Stieltjes inversion, free convolution calculus, free
selfdecomposability, selfsimilar free additive processes with their
background driving free Lévy processes, and random-matrix checks.
"""

from .calculus import bercovici_pata, bercovici_pata_inverse, boxplus, boxpower, dilate, shift
from .catalog import catalog_get
from .errors import ConfigError, ConvergenceError, FreeLevyError, RejectedInput
from .measures import CharTriplet, DensityPiece, LevyMeasure
from .processes import (
    FreeLevyProcessSpec,
    Integrand,
    SelfSimilarProcess,
    bdlp,
    sd_factor,
    sd_test,
    stochastic_integral_law,
)
from .transforms import DistributionSpec, cauchy_transform, density_grid, eval_cumulant

__version__ = "0.1.0"

__all__ = [
    "CharTriplet",
    "ConfigError",
    "ConvergenceError",
    "DensityPiece",
    "DistributionSpec",
    "FreeLevyError",
    "FreeLevyProcessSpec",
    "Integrand",
    "LevyMeasure",
    "RejectedInput",
    "SelfSimilarProcess",
    "bdlp",
    "bercovici_pata",
    "bercovici_pata_inverse",
    "boxplus",
    "boxpower",
    "catalog_get",
    "cauchy_transform",
    "density_grid",
    "dilate",
    "eval_cumulant",
    "sd_factor",
    "sd_test",
    "shift",
    "stochastic_integral_law",
]
