"""Moment sums and bias statistics of Dirichlet coefficients of
elliptic-curve families over finite fields."""

__version__ = "0.1.0"

from .errors import EcmomentsError
from .family import (
    BirchFamily,
    CubicForm,
    OneParamFamily,
    TwoParamFamily,
    builtin_names,
    get_family,
)
from .ffield import Prime, build_residue_table, is_prime, legendre, primes_from
from .moments import (
    MomentRecord,
    MomentSeries,
    a_values,
    moment_series,
    moment_sums,
    two_param_moment_sums,
)
from .oracles import REGISTRY, oracle_names, oracle_value, verify_oracle

__all__ = [
    "__version__",
    "EcmomentsError",
    "BirchFamily",
    "CubicForm",
    "OneParamFamily",
    "TwoParamFamily",
    "builtin_names",
    "get_family",
    "Prime",
    "build_residue_table",
    "is_prime",
    "legendre",
    "primes_from",
    "MomentRecord",
    "MomentSeries",
    "a_values",
    "moment_series",
    "moment_sums",
    "two_param_moment_sums",
    "REGISTRY",
    "oracle_names",
    "oracle_value",
    "verify_oracle",
]
