"""Askey-Wilson polynomials at roots of unity.

When ``q = exp(2 pi i M / N)`` the Askey-Wilson recurrence stops at degree
N and the polynomials become a finite family with a discrete, generally
complex, orthogonality measure on the zeros of ``P_N``.  This package
computes that measure, the zeros, the difference operator and several
special families, and checks the q-series identities behind them.
"""

from .arith import RootOfUnity, jacobi_symbol, make_root, q_poch, q_poch_multi
from .awp import (
    AWParams,
    DifferenceOperator,
    OrthogonalityReport,
    RecurrenceCoeffs,
    WeightTable,
    ZeroSet,
    difference_operator,
    eval_hypergeometric,
    eval_monic,
    F_series,
    hermitian_region_check,
    invariant_EN,
    pN_derivative,
    recurrence,
    verify_orthogonality,
    verify_theorem2,
    weight_product,
    weight_theorem1,
    zero_set,
)
from .errors import (
    CoPrimalityError,
    ConstraintError,
    DegenerateZeroError,
    DomainError,
    NonHermitianError,
    ParameterConstraintError,
    ParityError,
    QUnityError,
    RangeError,
    SingularDenominatorError,
    SingularParamError,
)
from .families.altqjacobi import AltQJacobiParams, aqj_all, aqj_limits
from .families.bigqjacobi import BigQJacobiParams, bqj_all, bqj_limits
from .families.cqjacobi import CQJacobiParams, cqj_eval, cqj_limits, cqj_weights
from .families.symmetric import SymmetricParams, sym_difference_operator, sym_recurrence, sym_weight
from .identities import (
    check_chu_vandermonde,
    check_dixon,
    check_gauss_sum,
    check_inversion,
    check_pfaff_saalschutz,
    check_q_binomial,
    check_singh,
)
from .report import IdentityReport
from .tolerance import Tolerances

__version__ = "0.1.0"
