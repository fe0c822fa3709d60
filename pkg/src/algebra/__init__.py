"""Notation, Chevalley-Eilenberg algebras and their cohomology."""

from src.algebra.cdga import Cdga, Involution, LieAlgebraData
from src.algebra.cohomology import CochainComplex, CohomologyClass, massey_triple
from src.algebra.notation import NotationError

__all__ = [
    "Cdga",
    "Involution",
    "LieAlgebraData",
    "CochainComplex",
    "CohomologyClass",
    "massey_triple",
    "NotationError",
]
