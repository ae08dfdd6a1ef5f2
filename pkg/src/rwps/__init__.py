"""Exact arithmetic for random walk polynomial sequences and their sieved versions."""

from .characterize import (
    CharacterizationReport,
    Verdict,
    characterization_report,
    check_alpha_vanishing,
    check_Dk_kernel_property,
    check_eigen,
    check_kappa_conditions,
    check_sieved_direct,
    check_ultraspherical_fit,
    verify_central_equation,
)
from .chebpoly import ChebPoly, evaluate, mul, mul_x, u_in_t
from .errors import (
    CoefficientRangeError,
    ConfigError,
    FieldMismatchError,
    InternalConsistencyError,
    InvalidCoefficientError,
    RWPSError,
)
from .expansion import ExpansionTables, pq_tables, r_coeffs, sieved_poly_expansion, ultraspherical_rp
from .family import (
    ChebyshevT,
    Custom,
    Family,
    Sieved,
    Table,
    Ultraspherical,
    c_star,
    expand_in_P,
    family_from_json,
    kernel_polynomial,
    polynomial,
    polynomials,
    sieve,
    weight_h,
)
from .field import FieldElement, MinPoly, abs_cos, cheb_value, field_degree, field_inverse, minimal_polynomial
from .operators import (
    FourierTable,
    alpha_closed_forms,
    alpha_table,
    apply_Ak,
    apply_Dk,
    fourier_table,
    kappa_table,
    sigma_val,
)

__version__ = "0.1.0"
