"""Exact-arithmetic toolkit for integration lattices.

Spectral tests, certified isotropic-discrepancy bounds, constructions, and
a CLI.  All core quantities are exact rationals; irrational values (square
roots, pi, Gamma at half-integers) are handled as two-sided rational
enclosures with directed rounding, so every printed digit and every
inequality verdict is certified.

The hot integer kernels have a compiled twin; `kernel_implementation` says
which one is active ("compiled" or "pure").  Set LATDISC_PURE_KERNELS=1 to
force the pure-Python reference kernels.
"""

from .kernels import IMPLEMENTATION as kernel_implementation

from .errors import (
    CapExceededError,
    InputError,
    InvariantViolationError,
    LatdiscError,
    NotIntegrationLatticeError,
    RankDeficientError,
    SingularMatrixError,
    UndecidableComparisonError,
)
from .linalg import RationalMatrix, det, gram_schmidt, hnf, inverse
from .lattice import (
    DualLattice,
    IntegrationLattice,
    PointSet,
    dual,
    enumerate_points,
    from_basis,
    from_json,
    from_rank1,
    membership,
    to_json,
)
from .reduction import (
    ReducedBasis,
    SpectralResult,
    covering_family,
    lll_reduce,
    shortest_vector,
    spectral_test,
    unit_cell_diameter_bound,
)
from .volume import (
    AxisBox,
    ConvexBody,
    Halfspace,
    Slab,
    body_contains,
    body_from_dict,
    body_to_dict,
    body_volume,
    halfspace_cube_volume,
    local_discrepancy,
)
from .discrepancy import (
    DiscrepancyEstimate,
    HyperplaneCountCertificate,
    SlabCertificate,
    estimate_isotropic_discrepancy,
    hyperplane_count_certificate,
    slab_certificate,
)
from .constructions import (
    GeneratorSearchResult,
    bad_lattice,
    fibonacci_lattice,
    korobov_lattice,
    korobov_search,
    scaled_integer_lattice,
)
from .bounds import (
    BoundsReport,
    DimensionConstants,
    GammaValue,
    constants_for,
    gamma_half_integer,
    minkowski_sigma_check,
    verify_lattice,
    write_reports_csv,
)
from .directed import Bounds, bounds_decimal, decimal_str, e_bounds, pi_bounds, sqrt_bounds

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "kernel_implementation",
    # errors
    "LatdiscError",
    "InputError",
    "RankDeficientError",
    "SingularMatrixError",
    "NotIntegrationLatticeError",
    "CapExceededError",
    "UndecidableComparisonError",
    "InvariantViolationError",
    # linear algebra
    "RationalMatrix",
    "det",
    "inverse",
    "hnf",
    "gram_schmidt",
    # lattices
    "IntegrationLattice",
    "DualLattice",
    "PointSet",
    "from_rank1",
    "from_basis",
    "from_json",
    "to_json",
    "dual",
    "membership",
    "enumerate_points",
    # reduction and spectral test
    "ReducedBasis",
    "lll_reduce",
    "shortest_vector",
    "SpectralResult",
    "spectral_test",
    "covering_family",
    "unit_cell_diameter_bound",
    # bodies and volumes
    "Halfspace",
    "Slab",
    "AxisBox",
    "ConvexBody",
    "halfspace_cube_volume",
    "body_volume",
    "body_contains",
    "local_discrepancy",
    "body_to_dict",
    "body_from_dict",
    # discrepancy
    "SlabCertificate",
    "slab_certificate",
    "HyperplaneCountCertificate",
    "hyperplane_count_certificate",
    "DiscrepancyEstimate",
    "estimate_isotropic_discrepancy",
    # constructions
    "fibonacci_lattice",
    "scaled_integer_lattice",
    "bad_lattice",
    "korobov_lattice",
    "korobov_search",
    "GeneratorSearchResult",
    # bounds and constants
    "GammaValue",
    "gamma_half_integer",
    "DimensionConstants",
    "constants_for",
    "minkowski_sigma_check",
    "BoundsReport",
    "verify_lattice",
    "write_reports_csv",
    # directed arithmetic
    "Bounds",
    "sqrt_bounds",
    "pi_bounds",
    "e_bounds",
    "decimal_str",
    "bounds_decimal",
]
