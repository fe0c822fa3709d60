"""
Configuration.

``Settings`` holds run parameters (logging, seed, search sizes) and reads them
from a YAML file and ``NILG2_*`` environment variables. ``OrbifoldConfig`` holds
the mathematical input: the nilpotent Lie algebra, the involution, the lattice
scaling, the G2 form and the classes the verification compares against. Its
defaults are the reference example; ``config/orbifold.yaml`` mirrors them.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

DEFAULT_SETTINGS_PATH = Path("config/config.example.yaml")


class Settings(BaseSettings):
    """Run parameters."""

    model_config = SettingsConfigDict(env_prefix="NILG2_", extra="ignore")

    log_level: str = "WARNING"
    log_format: str = "console"
    seed: int = 20240101
    isotropy_box: int = Field(default=8, ge=1)
    grid_steps: int = Field(default=9, ge=2)
    lattice_trials: int = Field(default=10_000, ge=1)
    lattice_bound: int = Field(default=5, ge=1)
    reduction_trials: int = Field(default=1_000, ge=1)
    involution_pairs: int = Field(default=200, ge=1)
    massey_rounds: int = Field(default=20, ge=0)

    @field_validator("log_format")
    @classmethod
    def _known_format(cls, value: str) -> str:
        if value not in ("console", "json"):
            raise ValueError("log_format must be 'console' or 'json'")
        return value


def _read_yaml(path: Path) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as handle:
        data = yaml.safe_load(handle) or {}
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a mapping at top level")
    return data


def load_settings(path: Optional[Path] = None, **overrides: Any) -> Settings:
    """
    Build Settings from the ``application`` and ``verification`` sections of a
    YAML file. Environment variables win over the file, explicit overrides
    (command-line flags) win over both.

    Args:
        path: YAML file; the example file is used when it exists and no path is given
        **overrides: Values that are not None replace the loaded ones

    Returns:
        The merged Settings

    Raises:
        ValueError: If the YAML file does not hold a mapping
    """
    values: Dict[str, Any] = {}
    source = path or (DEFAULT_SETTINGS_PATH if DEFAULT_SETTINGS_PATH.exists() else None)
    if source is not None:
        data = _read_yaml(source)
        for section in ("application", "verification"):
            values.update(data.get(section) or {})
    settings = Settings()
    merged = {**values, **settings.model_dump(exclude_unset=True)}
    merged.update({k: v for k, v in overrides.items() if v is not None})
    return Settings(**merged)


class MasseyConfig(BaseModel):
    """Triple Massey product on the invariant complex."""

    classes: List[str] = ["e3", "e15 + e26 - 2*e34", "e3"]
    listed_middle: str = "e15 - e26"
    expected_representative: str = "2*e356"


class ListedCohomology(BaseModel):
    """Representatives and spanning sets as listed for the invariant complex."""

    h1: List[str] = ["e3"]
    h2: List[str] = ["e25", "e15 - e26", "e15 - e34"]
    h3: List[str] = [
        "e235",
        "e135",
        "e356",
        "e124",
        "e146",
        "e245",
        "e127 + 2*e145",
    ]
    h3_rejected: List[str] = ["e125 + e167 - e257 - 2*e456 - e347"]
    b3: List[str] = [
        "e123",
        "e135 + e236",
        "-e136 + e235 + e236",
        "e127 - 2*e146 + 2*e245 + 2*e246",
    ]
    b3_listed_sign: str = "e135 - e236"
    z2: List[str] = [
        "e12",
        "-e16 + e25 + e26 - e34",
        "e25",
        "e15 - e26",
        "e15 - e34",
    ]


class ResolutionConfig(BaseModel):
    """Fixed-locus component and the classes used by the Massey lift."""

    component_labels: List[int] = [3, 4, 7]
    components: int = 16
    fibre_genus: int = 1
    fibre_form: str = "e47"
    component_massey: List[str] = ["e3", "e4", "-e3"]
    component_massey_representative: str = "-e37"
    lift_left: str = "e3"
    lift_target: str = "2*e356"
    beta_span: List[str] = ["e25", "e15 - e26", "e15 - e34"]

    @field_validator("component_labels")
    @classmethod
    def _three_labels(cls, value: List[int]) -> List[int]:
        if len(value) != 3 or len(set(value)) != 3:
            raise ValueError("a component is generated by three distinct labels")
        return value


class ExpectedInvariants(BaseModel):
    """Numbers the verification compares with."""

    betti_invariant: List[int] = [1, 1, 3, 8, 8, 3, 1, 1]
    betti_component: List[int] = [1, 2, 2, 1]
    betti_resolution: List[int] = [1, 1, 19, 40, 40, 19, 1, 1]
    dim_b3: int = 4
    dim_z2: int = 5
    isotropy_components: int = 16


class OrbifoldConfig(BaseModel):
    """Mathematical input of a verification run."""

    salamon: str = "(0,0,0,12,23,-13,-2(16)+2(25)+2(26)-2(34))"
    involution_signs: List[int] = [-1, -1, 1, 1, -1, -1, 1]
    u_scaling: List[str] = ["1", "1", "1", "1/2", "1/2", "1/2", "1/6"]
    v_matrix: List[List[str]] = [
        ["2*r3", "-r3", "0", "0", "r3", "r3", "0"],
        ["0", "3", "0", "0", "-1", "1", "0"],
        ["0", "0", "1", "2", "0", "0", "0"],
        ["0", "0", "r3", "0", "0", "0", "r3"],
        ["0", "0", "0", "0", "-r2", "r2", "0"],
        ["0", "0", "0", "0", "r6", "r6", "0"],
        ["0", "0", "-2*r2", "2*r2", "0", "0", "0"],
    ]
    g2_form: str = "e127 + e347 + e567 + e135 - e236 - e146 - e245"
    massey: MasseyConfig = Field(default_factory=MasseyConfig)
    cohomology: ListedCohomology = Field(default_factory=ListedCohomology)
    resolution: ResolutionConfig = Field(default_factory=ResolutionConfig)
    expected: ExpectedInvariants = Field(default_factory=ExpectedInvariants)

    @field_validator("involution_signs")
    @classmethod
    def _unit_signs(cls, value: List[int]) -> List[int]:
        if any(s not in (1, -1) for s in value):
            raise ValueError("involution signs must be +1 or -1")
        return value

    @classmethod
    def from_yaml(cls, path: Path) -> "OrbifoldConfig":
        """Validate a YAML file against the model."""
        return cls.model_validate(_read_yaml(path))


def load_orbifold_config(path: Optional[Path] = None) -> OrbifoldConfig:
    """
    Load the orbifold definition.

    Args:
        path: YAML file; the built-in defaults are used when None

    Returns:
        The validated OrbifoldConfig

    Raises:
        pydantic.ValidationError: If the file does not match the model
    """
    return OrbifoldConfig.from_yaml(path) if path is not None else OrbifoldConfig()
