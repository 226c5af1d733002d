"""Exact toric testbed for adjoint rings: polytopes, monoids, section rings."""

from .exact import QuadScalar
from .polytope import RationalCone, RationalPolytope
from .toric import Fan, TorusDivisor

__all__ = ["QuadScalar", "RationalCone", "RationalPolytope", "Fan", "TorusDivisor"]
__version__ = "0.1.0"
