"""Exact Darboux polynomial search and cyclotomic-symmetry certificates for
monomial derivations of polynomial rings over Q."""

from .arith import CyclotomicNumber, cyclotomic_field, cyclotomic_polynomial, geometric_sum, zeta_pow
from .certify import (
    CertificationError,
    build_structure,
    check_conjugation,
    check_lemma_components,
    delta_of,
    lambda_vanishing_certificate,
    orbit_product,
    theorem_pipeline,
)
from .darboux import (
    DarbouxPair,
    Status,
    derivation_matrix,
    general_cofactor_search,
    monomial_cofactor_search,
    rational_constant_to_darboux,
    search_up_to,
    verify_darboux,
)
from .deriv import (
    CyclotomicPartition,
    MonomialDerivation,
    apply,
    detect_cyclotomic_partition,
    direct_sum,
    exponent_matrix_and_wd,
    feasible_partitions,
    gen_four_variable_example,
    gen_generalized_cyclotomic,
    gen_jouanolou,
)
from .dsl import parse_polynomial, parse_spec, print_spec
from .poly import Polynomial, VariableContext

__version__ = "0.1.0"

__all__ = [
    "apply",
    "build_structure",
    "CertificationError",
    "check_conjugation",
    "check_lemma_components",
    "cyclotomic_field",
    "cyclotomic_polynomial",
    "CyclotomicNumber",
    "CyclotomicPartition",
    "DarbouxPair",
    "delta_of",
    "derivation_matrix",
    "detect_cyclotomic_partition",
    "direct_sum",
    "exponent_matrix_and_wd",
    "feasible_partitions",
    "gen_four_variable_example",
    "gen_generalized_cyclotomic",
    "gen_jouanolou",
    "general_cofactor_search",
    "geometric_sum",
    "lambda_vanishing_certificate",
    "monomial_cofactor_search",
    "MonomialDerivation",
    "orbit_product",
    "parse_polynomial",
    "parse_spec",
    "Polynomial",
    "print_spec",
    "rational_constant_to_darboux",
    "search_up_to",
    "Status",
    "theorem_pipeline",
    "VariableContext",
    "verify_darboux",
    "zeta_pow",
]
