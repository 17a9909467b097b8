"""
Settings and configuration for activecc.
"""

import json
import logging
from pathlib import Path
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..errors import CapacityError

logger = logging.getLogger(__name__)

# Documented desk-scale caps. Bell(13) is about 2.8e9 partitions.
EXACT_MAX_NODES = 13
VC_MAX_NODES = 6
TRIANGLE_MAX_NODES = 2000


class Settings(BaseSettings):
    """activecc configuration settings."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="ACTIVECC_",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging Settings
    log_level: str = Field(default="INFO", description="Logging level")
    log_file: Optional[str] = Field(default=None, description="Log file path")

    # Experiment Settings
    output_dir: str = Field(default="./results", description="Directory for CSV and reports")
    default_seed: int = Field(default=0, description="Master seed when --seed is not given")
    repetitions: int = Field(default=20, ge=1, description="Seeded runs per grid point")
    acr_failure_probability: float = Field(
        default=0.1, gt=0, lt=1, description="Failure probability p used for ACR's default K"
    )
    csv_float_digits: Optional[int] = Field(
        default=None, ge=1, le=17, description="Fixed decimals in CSV output (None = exact round trip)"
    )

    # Capacity Settings
    exact_max_nodes: int = Field(default=EXACT_MAX_NODES, description="Cap for exact OPT and ERM")
    vc_max_nodes: int = Field(default=VC_MAX_NODES, description="Cap for the VC shattering check")
    triangle_max_nodes: int = Field(
        default=TRIANGLE_MAX_NODES, description="Cap for the bad-triangle scan"
    )

    # Performance Settings
    max_workers: int = Field(default=1, ge=1, description="Processes for repetitions (1 = serial)")

    def __init__(self, **kwargs):
        super().__init__(**kwargs)

        for name, default in (
            ("exact_max_nodes", EXACT_MAX_NODES),
            ("vc_max_nodes", VC_MAX_NODES),
            ("triangle_max_nodes", TRIANGLE_MAX_NODES),
        ):
            value = getattr(self, name)
            if value > default:
                logger.warning(
                    f"{name} raised to {value} above the documented cap {default}; "
                    "enumeration time grows super-exponentially"
                )

    @property
    def output_path(self) -> Path:
        """Output directory, created on first access."""
        path = Path(self.output_dir)
        path.mkdir(parents=True, exist_ok=True)
        return path

    def check_capacity(self, what: str, n: int, cap_field: str) -> None:
        """Raise CapacityError when n exceeds the configured cap."""
        cap = getattr(self, cap_field)
        if n > cap:
            raise CapacityError(what, n, cap)

    def to_dict(self) -> dict:
        """Convert settings to dictionary."""
        return self.model_dump()

    @classmethod
    def from_file(cls, config_path: str) -> "Settings":
        """Load settings from a JSON file."""
        with open(config_path, "r") as f:
            config_data = json.load(f)
        return cls(**config_data)


# Global settings instance
_settings = None


def get_settings() -> Settings:
    """Get global settings instance."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def set_settings(settings: Optional[Settings]) -> None:
    """Replace the global settings instance (None resets to defaults on next access)."""
    global _settings
    _settings = settings
