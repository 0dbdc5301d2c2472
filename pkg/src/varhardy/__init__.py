"""Hardy operators and Luxemburg norms in variable-exponent Lebesgue spaces
on (0, inf) with the measure dt/t, evaluated on logarithmic grids."""
from .exponent import ExponentFunction, Family, make_family, parse_exponent
from .functions import TestFunction, parse_function
from .grid import LogGrid, SampledFunction, build, parse_grid
from .hardy import (
    DiscreteHardyParams, HardyParams, Lemma22Spec, Variant, discrete_hardy_check,
    discrete_hardy_transform, eta, eta_unit, lam, lemma22_check, young_constant,
)
from .lab import (
    Mode, Which, cross_exponent_check, equivalence_report, moreover_check,
    monotone_variant_report,
)
from .lebesgue import (
    ConvergenceError, MixedNormInput, fixed_norm, luxemburg_norm, mixed_norm, modular,
    unit_ball_check,
)

__version__ = "0.1.0"
