"""gamma_zoo: many roads to the Gamma function, cross-checked against each other.

Set ``GAMMA_ZOO_NO_JIT=1`` before import to run the pure-numpy kernels
instead of the numba-compiled loops.
"""

from ._jit import USE_NUMBA
from .audits import (
    AuditReport,
    bohr_mollerup_audit,
    frullani_integral,
    kummer_loggamma,
    malmsten_loggamma,
    multiplication_residual,
    reflection_residual,
    wielandt_audit,
    zero_survey,
)
from .companions import (
    bourget_T,
    davis_pseudo_gamma,
    digamma_stern,
    euler_gamma_constant,
    factorielle,
    hadamard_H,
    loggamma_hermite,
    prym_P,
    prym_P_ascending,
    prym_Q,
)
from .constructions import (
    GammaConstruction,
    GammaKind,
    extend_by_recursion,
    gamma_euler_integral,
    gamma_euler_log_integral,
    gamma_gauss_extrapolated,
    gamma_gauss_product,
    gamma_reference,
    gamma_weierstrass_product,
    weierstrass_limit_check,
)
from .errors import (
    ArgumentError,
    BudgetExceededError,
    ContourError,
    DomainError,
    GammaZooError,
    MathError,
    PoleError,
    UnreliableCountError,
)
from .higher import (
    BenderskyLevel,
    RationalFunctionSpec,
    bendersky_log_gamma,
    lerch_consistency,
    mellin_gamma_from_rational,
)
from .numerics import (
    EvalResult,
    QuadratureConfig,
    Rectangle,
    SeriesConfig,
    hurwitz_zeta_with_derivative,
    integrate_adaptive,
    integrate_halfline,
    zero_count_argument_principle,
)

__version__ = "0.1.0"
