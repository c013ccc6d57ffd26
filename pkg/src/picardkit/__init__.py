"""Skeletal Picard groupoids, symmetric 3-cocycles and cokernel bigroupoids."""

from .abelian import FgAbGroup, GroupElement, GroupHom, make_group
from .cocycle import SymCocycle3, enumerate_h3_sym, quadratic_of, validate_symmetric_cocycle
from .cokernel import CokBigroupoid, double_category_check, long_exact_sequence, postnikov_tower
from .picard import PicFunctor, PicGroupoid, make_picard, strictify, validate_functor
from .sphere import free_map, sphere, sphere_action

__all__ = [
    "CokBigroupoid",
    "FgAbGroup",
    "GroupElement",
    "GroupHom",
    "PicFunctor",
    "PicGroupoid",
    "SymCocycle3",
    "double_category_check",
    "enumerate_h3_sym",
    "free_map",
    "long_exact_sequence",
    "make_group",
    "make_picard",
    "postnikov_tower",
    "quadratic_of",
    "sphere",
    "sphere_action",
    "strictify",
    "validate_functor",
    "validate_symmetric_cocycle",
]

__version__ = "0.1.0"
