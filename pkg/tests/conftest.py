"""Shared fixtures."""

import pytest

from src.algebra.cdga import Cdga, involution_from_signs, invariant_subcomplex
from src.algebra.cohomology import CochainComplex
from src.config import OrbifoldConfig, Settings

NIL_SALAMON = "(0,0,0,12,23,-13,-2(16)+2(25)+2(26)-2(34))"
NIL_SIGNS = [-1, -1, 1, 1, -1, -1, 1]


@pytest.fixture(scope="session")
def nil_cdga() -> Cdga:
    return Cdga.from_salamon(NIL_SALAMON, name="g")


@pytest.fixture(scope="session")
def invariant_complex(nil_cdga: Cdga) -> CochainComplex:
    involution = involution_from_signs(nil_cdga, NIL_SIGNS)
    return CochainComplex(invariant_subcomplex(nil_cdga, involution))


@pytest.fixture(scope="session")
def heisenberg() -> CochainComplex:
    """de^3 = -e^12, dual to [e1, e2] = e3."""
    return CochainComplex(Cdga.from_salamon("(0,0,-12)", name="h"))


@pytest.fixture
def orbifold_config() -> OrbifoldConfig:
    return OrbifoldConfig()


@pytest.fixture
def fast_settings() -> Settings:
    return Settings(
        seed=7,
        lattice_trials=200,
        reduction_trials=50,
        massey_rounds=3,
        grid_steps=4,
        involution_pairs=40,
    )
