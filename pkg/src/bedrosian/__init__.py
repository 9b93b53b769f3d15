"""Bedrosian identities for Fourier multipliers on discretized frequency grids.

Decide whether a bounded translation-invariant operator can satisfy
``T(fg) = f T(g)`` for every ``f`` with spectrum in ``A`` and ``g`` with
spectrum in ``B``, characterize the admissible multipliers, and check
candidates numerically.
"""
from .config import AnalysisConfig, MultiplierSpec, load_config, parse_config
from .errors import (AntiAliasingError, BedrosianError, ConfigError, EmptyInputError,
                     GridMismatchError)
from .geometry import (CharacteristicDecomposition, ComponentLabeling, characteristic_decomposition,
                       connected_components, essential_set, minkowski_sum, rasterize,
                       robust_positive_measure)
from .grid import FrequencyGrid, RegionMask
from .multipliers import (ExistenceReport, HilbertSupportReport, MultiplierField,
                          StructuralVerdict, existence_decision, hilbert_support_test,
                          is_ae_constant_on, make_multiplier, structural_bedrosian_check)
from .regions import (Ball, Box, Complement, Empty, Full, HalfSpace, Intersection, Quadrant,
                      Reflect, Region, Translate, Union, box_gap_complement, parse_region)
from .verification import (SpatialSignal, VerificationReport, apply_multiplier,
                           bedrosian_residual, pointwise_criterion_oracle, run_trials,
                           synthesize_bandlimited, titchmarsh_check)

__all__ = [
    "AnalysisConfig", "MultiplierSpec", "load_config", "parse_config",
    "AntiAliasingError", "BedrosianError", "ConfigError", "EmptyInputError", "GridMismatchError",
    "CharacteristicDecomposition", "ComponentLabeling", "characteristic_decomposition",
    "connected_components", "essential_set", "minkowski_sum", "rasterize",
    "robust_positive_measure",
    "FrequencyGrid", "RegionMask",
    "ExistenceReport", "HilbertSupportReport", "MultiplierField", "StructuralVerdict",
    "existence_decision", "hilbert_support_test", "is_ae_constant_on", "make_multiplier",
    "structural_bedrosian_check",
    "Ball", "Box", "Complement", "Empty", "Full", "HalfSpace", "Intersection", "Quadrant",
    "Reflect", "Region", "Translate", "Union", "box_gap_complement", "parse_region",
    "SpatialSignal", "VerificationReport", "apply_multiplier", "bedrosian_residual",
    "pointwise_criterion_oracle", "run_trials", "synthesize_bandlimited", "titchmarsh_check",
]

__version__ = "0.1.0"
