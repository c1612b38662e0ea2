"""Real linear combinations of orthoprojections for Hermitian matrices."""

from .exact import (
    RationalSpectrum,
    padded_family_spectrum,
    four_point_spectrum,
    family_certificate,
    family_params,
    family_spectrum,
    two_comb_feasible_exact,
)
from .exceptions import (
    DecompositionError,
    InfeasibleError,
    PreconditionError,
    SingularityError,
    UnsupportedInputError,
    ValidationError,
)
from .fourproj import (
    ProjectionCombination,
    decompose4,
    decompose5_integral_even,
    decompose8_complex,
    verify_combination,
)
from .linalg import hermitian_eigen, is_orthoprojection, svd_paired
from .search import SearchConfig, fit_coefficients, rank_sweep, search_three
from .selfcomm import witness as self_commutator_witness
from .twoproj import (
    halmos_difference,
    halmos_sum,
    two_comb_enumerate,
    two_comb_feasible,
    two_comb_synthesize,
)

__version__ = "0.1.0"
