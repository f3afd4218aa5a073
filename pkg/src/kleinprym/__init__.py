"""Klein coverings of genus-2 curves: configurations, Prym period matrices
and the inverse Prym map."""

from .config_p1 import (
    INF,
    MarkedConfiguration,
    NormalizedConfiguration,
    PairPartition,
    Triple,
    canonical_form,
    cross_ratio,
    equivalent,
    normalize,
)
from .elliptic_periods import modular_lambda, tau_from_branch_points
from .errors import DegenerateError, KleinError, LatticeError, LocusError
from .polarized_lattice import D2, D4, PolarizationType, PolarizedPeriodMatrix
from .prym_map import (
    build_Z2,
    build_Z4,
    prym_forward,
    prym_forward_isotropic,
    prym_forward_non_isotropic,
    prym_inverse,
    verify_prym,
)
from .torsion_f2 import TwoTorsionClass, enumerate_klein_subgroups, weil_pairing

__version__ = "0.1.0"

__all__ = [
    "INF", "MarkedConfiguration", "NormalizedConfiguration", "PairPartition", "Triple",
    "canonical_form", "cross_ratio", "equivalent", "normalize",
    "modular_lambda", "tau_from_branch_points",
    "DegenerateError", "KleinError", "LatticeError", "LocusError",
    "D2", "D4", "PolarizationType", "PolarizedPeriodMatrix",
    "build_Z2", "build_Z4", "prym_forward", "prym_forward_isotropic",
    "prym_forward_non_isotropic", "prym_inverse", "verify_prym",
    "TwoTorsionClass", "enumerate_klein_subgroups", "weil_pairing",
]
