"""Cohomology ring of the resolved orbifold."""

from src.topology.resring import ResolutionRing, massey_lift_check

__all__ = ["ResolutionRing", "massey_lift_check"]
