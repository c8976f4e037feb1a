"""Exact computations with modulations on finite categories and their category algebras."""

from .fincat import FiniteCategory, slice_category, validate_category
from .linalg import QQ, Field, Matrix
from .algebra import Algebra, Bimodule, tensor_over
from .modulation import (Comodulation, Modulation, PresheafOfAlgebras, constant_modulation,
                         presheaf_to_comodulation, presheaf_to_modulation, validate_comodulation,
                         validate_modulation)
from .mcalgebra import (ModCatAlgebra, build_comod_cat_algebra, build_mod_cat_algebra, build_pi,
                        category_algebra, skew_category_algebra)
from .equivalence import LaxTransformation, Modification, iota_star, lax_check, pi_star
from .finiteness import PresheafModule, finite_type, finitely_generated, separation_demo

__all__ = [
    "FiniteCategory", "slice_category", "validate_category", "QQ", "Field", "Matrix", "Algebra", "Bimodule",
    "tensor_over", "Comodulation", "Modulation", "PresheafOfAlgebras", "constant_modulation",
    "presheaf_to_comodulation", "presheaf_to_modulation", "validate_comodulation", "validate_modulation",
    "ModCatAlgebra", "build_comod_cat_algebra", "build_mod_cat_algebra", "build_pi", "category_algebra",
    "skew_category_algebra", "LaxTransformation", "Modification", "iota_star", "lax_check", "pi_star",
    "PresheafModule", "finite_type", "finitely_generated", "separation_demo",
]

__version__ = "0.1.0"
