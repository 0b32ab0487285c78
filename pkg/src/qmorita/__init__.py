"""Finite sup-lattices, quantales and their module categories, with brute-force
checks of the Morita theory of quantales at small sizes."""

from .errors import BudgetExceeded, QuantaleError
from .lattice import (
    FiniteSupLattice,
    SupMap,
    biproduct,
    is_sup_map,
    right_adjoint,
    split_idempotent,
    validate_lattice,
)
from .matrix import Matrix, identity_matrix, j_iso, mat_mul, matrix_quantale
from .modules import (
    ModuleMorphism,
    RightModule,
    endo_module_quantale,
    enumerate_modules,
    free_module,
    hom_lattice,
    is_epi,
    is_generator,
    is_projective,
    submodule_generated,
    validate_module,
)
from .morita import (
    ComparisonFunctor,
    alpha_iso,
    comparison_functor,
    eAe_end_iso,
    eAe_quantale,
    is_full_idempotent,
    kappa_map,
    morita_witness_check,
    projective_generator_census,
    verify_equivalence,
)
from .quantale import (
    Quantale,
    endo_quantale,
    is_commutative,
    is_idempotent,
    is_locale,
    powerset_monoid_quantale,
    quantale_iso_search,
    relation_quantale,
    validate_quantale,
)
from .tensor import curry_bijection_check, factor_through_tensor, internal_hom, tensor

__all__ = [
    "BudgetExceeded", "QuantaleError",
    "FiniteSupLattice", "SupMap", "biproduct", "is_sup_map", "right_adjoint", "split_idempotent",
    "validate_lattice",
    "Matrix", "identity_matrix", "j_iso", "mat_mul", "matrix_quantale",
    "ModuleMorphism", "RightModule", "endo_module_quantale", "enumerate_modules", "free_module",
    "hom_lattice", "is_epi", "is_generator", "is_projective", "submodule_generated", "validate_module",
    "ComparisonFunctor", "alpha_iso", "comparison_functor", "eAe_end_iso", "eAe_quantale", "is_full_idempotent", "kappa_map",
    "morita_witness_check", "projective_generator_census", "verify_equivalence",
    "Quantale", "endo_quantale", "is_commutative", "is_idempotent", "is_locale",
    "powerset_monoid_quantale", "quantale_iso_search", "relation_quantale", "validate_quantale",
    "curry_bijection_check", "factor_through_tensor", "internal_hom", "tensor",
]
