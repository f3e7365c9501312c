"""Periods of second-order linear recurrences modulo primes and prime powers.

Computes k_{A,B}(m), the period of E_{n+1} = A*E_n + B*E_{n-1} (mod m) with
E_0 = 0, E_1 = 1, by direct iteration, by the order of the companion matrix,
and by the orders of its eigenvalues in F_p or F_{p^2}; and checks the
p - 1 and 2(p + 1) * ord(B**2) divisibility bounds over ranges of primes.
"""

from .errors import (
    BoundViolation,
    CapExceeded,
    InvalidModulus,
    MethodDisagreement,
    NoRoot,
    NormZero,
    NotInvertible,
    NotPurelyPeriodic,
    PisanoError,
    WrongContext,
    ZeroElement,
)
from .modular import (
    Factorization,
    PrimeModulus,
    factorize,
    is_prime,
    legendre_symbol,
    mod_inv,
    mod_pow,
    mult_order,
    primes_up_to,
    sqrt_mod,
)
from .quadratic_field import (
    Classification,
    FieldCtx,
    Fp2Element,
    eigenvalues,
    fp2_arith,
    fp2_order,
    fp2_pow,
    frobenius,
)
from .recurrence import (
    Mat2,
    PeriodReport,
    RecurrenceSpec,
    analyze,
    companion,
    eigenvalue_period,
    mat_pow,
    matrix_order_period,
    naive_period,
    naive_periods,
    period,
    period_composite,
    period_prime_power,
    sequence_slice,
)
from .theorems import (
    BoundResult,
    SurveyResult,
    SurveyRow,
    bound_for_prime,
    classify,
    discriminant,
    tightness_survey,
    verify_range,
)

__version__ = "0.1.0"
