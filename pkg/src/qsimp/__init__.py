"""Exact-arithmetic simplicity decisions for torus-relation Cuntz-Pimsner
algebras, plus the lattice machinery behind them."""

from .chain import (
    ChainTrace,
    DenseCertificate,
    DensityVerdict,
    annihilator_step_neg,
    annihilator_step_pos,
    compute_chain,
    decide_density,
    shortest_vector,
    step_neg,
    step_pos,
)
from .errors import (
    BudgetExceeded,
    ConsistencyError,
    DimensionMismatch,
    NonPositiveDiagonal,
    NotTriangular,
    ParseError,
    QsimpError,
    SingularMatrix,
    UnsupportedFormat,
)
from .finite_oracle import (
    FiniteQuiver,
    GapResult,
    MinimalityReport,
    condition_L_finite,
    density_1d,
    gamma0_finite,
    minimal_finite,
    verify_minimality_theorem,
)
from .intmat import (
    IntMatrix,
    SmithDecomposition,
    adjugate,
    det,
    hnf,
    is_unimodular,
    mod_inverse_reduced,
    snf,
    unimodular_inverse,
)
from .lattice import (
    IntegerSublattice,
    RationalLattice,
    contains,
    dual_annihilator,
    dual_lattice,
    equals,
    from_kernel,
    from_rational_rows,
    index,
    join,
    preimage,
    pushforward,
    standard,
    sublattice_contains,
    sublattice_from_rows,
    sublattice_index,
    sublattice_intersect,
    sublattice_transform,
)
from .presentation import Presentation, index_set, present, render
from .simplicity import (
    Hypotheses,
    SimplicityVerdict,
    check_hypotheses,
    condition_L,
    decide,
    is_dilation,
    normalize,
    reduce_left,
    reduce_right,
    triangular_criterion,
)

__all__ = [name for name in dir() if not name.startswith("_")]
