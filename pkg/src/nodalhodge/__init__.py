"""Exact-arithmetic invariants of nodal hypersurfaces in projective 4-space.

Graded Jacobian-ring Hodge numbers, node counting through zero-dimensional
singular schemes, adjoint vanishing conditions, generalized Euler
polynomials with their mixed-Hodge bookkeeping, and differential operators
of one-parameter pencils with local exponent analysis.
"""

from .scalars import (DEFAULT_PRIMES, QQ, QQ_T, PrimeField, RatFun, UPoly,
                      crt_pair, rational_reconstruction)
from .polyring import (GREVLEX, MonomialOrder, Polynomial,
                       ci_hilbert_series_coeff, elementary_symmetric, is_homogeneous, monomial_basis,
                       monomial_count, partial_derivatives, power_sum,
                       restrict_to_hyperplane)
from .groebner import (NOT_ZERO_DIMENSIONAL, GroebnerBasis, buchberger,
                       hilbert_function, jacobian_ideal, node_count_modular,
                       normal_form, reducedness_probe, s_polynomial,
                       zero_dim_degree)
from .hodge import (EulerPolynomial, HodgeDiamondH3, MhsReport,
                    adjoint_rank_report, adjoint_space_dim, euler_blowup,
                    euler_nodal_threefold, euler_of_Pn, euler_product,
                    euler_resolution, euler_sum, mhs_dims,
                    modular_adjoint_report, node_bound,
                    pole_adjoint_threshold, smooth_hodge_numbers)
from .pencil import (INFINITY, MAXIMAL_UNIPOTENT, NON_LOCAL_MONODROMY,
                     QUASI_UNIPOTENT, UNIPOTENT, IndicialData,
                     NoOperatorFound, PFOperator, Pencil, RationalFormRep,
                     SingularPencilError, UnipotencyReport,
                     annihilates_negative_power_series, gd_reduce,
                     holomorphic_solution, indicial_exponents, mum_transform,
                     period_ct_series, picard_fuchs, theta_indicial,
                     unipotency_class)
from .cli import parse_euler_program, parse_polynomial, render_polynomial

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PRIMES", "QQ", "QQ_T", "PrimeField", "RatFun", "UPoly",
    "crt_pair", "rational_reconstruction",
    "GREVLEX", "MonomialOrder", "Polynomial", "ci_hilbert_series_coeff",
    "elementary_symmetric", "is_homogeneous", "monomial_basis",
    "monomial_count", "partial_derivatives", "power_sum",
    "restrict_to_hyperplane",
    "NOT_ZERO_DIMENSIONAL", "GroebnerBasis", "buchberger",
    "hilbert_function", "jacobian_ideal", "node_count_modular",
    "normal_form", "reducedness_probe", "s_polynomial", "zero_dim_degree",
    "EulerPolynomial", "HodgeDiamondH3", "MhsReport",
    "adjoint_rank_report", "adjoint_space_dim", "euler_blowup",
    "euler_nodal_threefold", "euler_of_Pn", "euler_product",
    "euler_resolution", "euler_sum", "mhs_dims", "modular_adjoint_report",
    "node_bound", "pole_adjoint_threshold", "smooth_hodge_numbers",
    "INFINITY", "MAXIMAL_UNIPOTENT", "NON_LOCAL_MONODROMY",
    "QUASI_UNIPOTENT", "UNIPOTENT", "IndicialData", "NoOperatorFound",
    "PFOperator", "Pencil", "RationalFormRep", "SingularPencilError",
    "UnipotencyReport", "annihilates_negative_power_series", "gd_reduce",
    "holomorphic_solution", "indicial_exponents", "mum_transform",
    "period_ct_series", "picard_fuchs", "theta_indicial",
    "unipotency_class",
    "parse_euler_program", "parse_polynomial", "render_polynomial",
]
