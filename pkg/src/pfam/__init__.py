"""Lengths, multiplicities and limits for p-families of monomial ideals.

Everything is exact: lengths are lattice counts, volumes are rationals.
"""

from __future__ import annotations

from .errors import (
    CapExceeded,
    ContainmentError,
    DimensionMismatch,
    InfiniteLength,
    NotAPowerOfP,
    PfamError,
    PreconditionFailed,
    SingularSystem,
    Unsupported,
    ZeroIdealError,
)
from .family import (
    ClosedPower,
    Constant,
    FamilyReport,
    Frobenius,
    OrdinaryPower,
    ShiftedProduct,
    Table,
    Truncation,
    evaluate,
    finite_type_threshold,
    linear_growth_constant,
    truncate,
    verify_family_axioms,
)
from .kernels import BACKEND
from .limits import (
    CoefficientLimits,
    DoubleLimitResult,
    LimitSequence,
    PolynomialFit,
    basis_search,
    coefficient_limits,
    double_limit_table,
    fit_homogeneous,
    length_sequence,
)
from .monomial import (
    Halfspace,
    MonomialIdeal,
    colength,
    combine,
    count_below,
    integral_closure,
    is_m_primary,
    minimalize,
    power,
    relative_colength,
)
from .multiplicity import (
    MultiplicityReport,
    dim2_family_rhs,
    e_vs_ehk_check,
    hilbert_kunz,
    mixed_dim2,
    samuel,
    verma_rhs,
)
from .regions import (
    CovolumeResult,
    Region,
    covolume,
    make_convex,
    make_staircase,
    minkowski_scale_sum,
    newton_region,
    pbody,
    region_properties,
    staircase,
    volume_below,
)

__version__ = "0.1.0"
