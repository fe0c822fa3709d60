"""Exact arithmetic: the field Q(√2, √3), exterior forms and matrices."""

from src.core.exterior import Form, wedge
from src.core.linalg import SingularMatrixError, determinant, kernel_basis, rank
from src.core.scalars import FieldElement

__all__ = [
    "FieldElement",
    "Form",
    "wedge",
    "SingularMatrixError",
    "determinant",
    "kernel_basis",
    "rank",
]
