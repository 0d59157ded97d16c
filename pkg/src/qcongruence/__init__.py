"""Exact-arithmetic certification of q-congruences.

The library certifies congruences between truncated q-hypergeometric sums
modulo products of cyclotomic polynomial powers, checks the matching
closed-form identities exactly, and verifies the classical prime-power
congruences obtained in the q -> 1 limit.  Everything is computed over
arbitrary-precision integers and exact rationals; no result depends on
floating point or on any probabilistic shortcut.
"""

__version__ = "0.1.0"

from .congruence import (
    CheckKind,
    CongruenceReport,
    ModulusSpec,
    build_modulus_theorem,
    check_congruence,
    check_identity_equal,
    jackson_6phi5_terminating,
    modulus_q_integer,
    verify_case,
    verify_parametric_roots,
    verify_parametric_sampled,
)
from .cyclotomic import (
    cyclotomic,
    divisors,
    euler_phi,
    ord_cyclotomic_in_one_minus_pow,
    q_integer_cyclotomic_factors,
)
from .padic import (
    ResidueReport,
    dwork_quotient_check,
    lucas_vanishing,
    truncation,
    verify_lucas,
    verify_m2,
    verify_swisher,
    verify_van_hamme,
)
from .polycore import (
    INFINITE,
    LaurentPoly,
    Poly,
    Rational,
    div_rem_by_monic,
    eval_at,
    mul,
    normalize_one_minus_pow,
    valuation_at,
)
from .qseries import (
    FactoredProduct,
    FamilySpec,
    SeriesSum,
    classical_term_value,
    eta_product_coefficients,
    q_integer,
    q_pochhammer,
    sum_truncated,
    term_of,
)

__all__ = [name for name in dir() if not name.startswith("_")]
