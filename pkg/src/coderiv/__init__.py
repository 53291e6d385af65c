"""Exact computation of Hochschild cohomology and its Gerstenhaber
structure on arbitrary free bimodule resolutions, through higher-coalgebra
structures and their coderivations."""

from .algebra import (Algebra, AlgebraElement, make_algebra, multiply,
                      truncated_polynomial_algebra)
from .ainfinity import (AinftyStructure, ainfty_defect, check_weak_counit,
                        construct_delta)
from .complexes import (FreeBimoduleComplex, GradedBimoduleMap,
                        TensorElement, amplified_compose, amplify_apply,
                        compose, identity_map, zero_map)
from .fields import PrimeField, Rationals, field_from_descriptor

__all__ = [
    "Algebra", "AlgebraElement", "make_algebra", "multiply",
    "truncated_polynomial_algebra",
    "AinftyStructure", "ainfty_defect", "check_weak_counit",
    "construct_delta",
    "FreeBimoduleComplex", "GradedBimoduleMap", "TensorElement",
    "amplified_compose", "amplify_apply", "compose", "identity_map",
    "zero_map",
    "PrimeField", "Rationals", "field_from_descriptor",
]
