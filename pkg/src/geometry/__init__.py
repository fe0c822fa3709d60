"""G2 forms and the nilpotent group with its lattice."""

from src.geometry.g2check import gram_from_threeform, is_g2_form
from src.geometry.nilgroup import GroupElement, NilpotentGroup

__all__ = ["gram_from_threeform", "is_g2_form", "GroupElement", "NilpotentGroup"]
