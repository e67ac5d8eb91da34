"""Configuration models and utilities."""

import json
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import yaml
from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class SchreierSimsConfig(BaseModel):
    """Knobs of the seeded random phase that precedes deterministic completion."""
    random_seed: int = Field(default=0, ge=0)
    product_replacement_size: int = Field(default=10, ge=2)
    warmup_rounds: int = Field(default=50, ge=0)
    identity_streak: int = Field(default=40, ge=1)


class ExperimentConfig(BaseModel):
    """Configuration for seeded studies."""
    batch_size: int = Field(default=50, ge=1)
    enumeration_max_k: int = Field(default=6, ge=1)
    same_order_band: Tuple[float, float] = (4.26340, 12.0)
    compute_witnesses: bool = False
    tolerance_policy: str = "config/tolerances.json"


class Settings(BaseSettings):
    """Complete system configuration."""
    model_config = SettingsConfigDict(env_prefix="MCG_", env_nested_delimiter="__", extra="ignore")

    log_level: str = "INFO"
    schreier_sims: SchreierSimsConfig = Field(default_factory=SchreierSimsConfig)
    normal_closure_max_rounds: int = Field(default=1000, ge=1)
    witness_step_budget: int = Field(default=200, ge=1)
    witness_kernel_attempts: int = Field(default=200, ge=1)
    experiments: ExperimentConfig = Field(default_factory=ExperimentConfig)

    @classmethod
    def from_file(cls, config_path: Path) -> "Settings":
        """Load configuration from a JSON or YAML file."""
        config_path = Path(config_path)
        with open(config_path) as f:
            if config_path.suffix in (".yaml", ".yml"):
                data = yaml.safe_load(f) or {}
            else:
                data = json.load(f)
        return cls(**data)


_override: Optional[Settings] = None


@lru_cache(maxsize=1)
def _default_settings() -> Settings:
    return Settings()


def get_settings() -> Settings:
    """Process-wide settings: the configured instance, else defaults plus environment."""
    return _override if _override is not None else _default_settings()


def configure(settings: Optional[Settings]) -> None:
    """Install ``settings`` process-wide; ``None`` restores the defaults."""
    global _override
    _override = settings
    _default_settings.cache_clear()


def load_tolerance_policy(config_path: Path) -> Dict[str, Any]:
    """Load the Monte Carlo tolerance policy from JSON file."""
    with open(config_path) as f:
        return json.load(f)


def tolerance_notes(policy: Dict[str, Any]) -> List[str]:
    """Human-readable lines describing a tolerance policy."""
    notes = [f"sigma multiplier: {policy.get('sigma_multiplier', 3)}"]
    for key, value in sorted(policy.get("bucket_tolerance", {}).items()):
        notes.append(f"tolerance {key}: {value}")
    notes.extend(policy.get("model_error", []))
    return notes
