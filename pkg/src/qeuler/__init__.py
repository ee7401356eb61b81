"""Computation laboratory for q-Euler numbers and their interpolating
functions: exact rational identities, Abel-regularized complex zeta and
l-values, capped-precision p-adic interpolation, and a staged verifier
for the p-adic expansion of alternating power sums."""

from .errors import (
    DenominatorDivisibleByP,
    NoConvergence,
    NotCoprime,
    NotOneUnit,
    OutOfDomain,
    PrecisionExhausted,
    QEulerError,
    QIsOne,
    TruncationNotConverged,
)
from .euler import (
    DistributionCheck,
    PolyArg,
    alt_power_sum,
    alt_power_sum_closed,
    alt_power_sum_polyform,
    distribution_check,
    euler_number_classical,
    euler_number_q,
    euler_poly_classical,
    euler_poly_q,
    fermionic_riemann,
)
from .kernel import (
    QParam,
    binom_int,
    binom_product_merge,
    binom_product_shift,
    binom_tail_merge,
    padic_valuation,
    q_int,
    q_int_neg,
)
from .lfunc import (
    H_pq,
    K_pq,
    K_pq_chi,
    SeriesBudget,
    StageResult,
    T_pq,
    T_pq_chi,
    VerificationReport,
    gen_euler_teich,
    l_pq,
    theorem5_lhs,
    theorem5_lhs_exact,
    theorem5_rhs,
    theorem5_rhs_weighted,
    theorem5_verify,
)
from .padic import (
    PadicApprox,
    TeichChar,
    agreement,
    angle_bracket,
    binom_zp,
    embed,
    padic_exp,
    padic_log,
    power_zp,
    teichmuller,
)
from .zeta import (
    ArchParams,
    ComplexChar,
    gen_euler_complex,
    l_q_complex,
    partial_zeta_Hq,
    partial_zeta_Hq_series,
    zeta_Eq,
)

__version__ = "0.1.0"
