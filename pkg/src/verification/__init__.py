"""Verification checks and their report."""

from src.verification.validator import OrbifoldVerifier

__all__ = ["OrbifoldVerifier"]
