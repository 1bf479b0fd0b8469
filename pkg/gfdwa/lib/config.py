"""gfdwa application configuration management with pydantic validation"""

from pathlib import Path
from typing import Dict, Any, Optional
import yaml
import shutil
from pydantic import BaseModel, Field, field_validator

from .. import __version__


VARIANTS = ("gf-dwa", "dwa-ablation")


class GfDwaConfig(BaseModel):
    """gfdwa main configuration."""
    version: str = __version__
    default_variant: str = Field(default="gf-dwa", description="Planner variant used when --variant is omitted")

    @field_validator("default_variant")
    @classmethod
    def _known_variant(cls, value: str) -> str:
        if value not in VARIANTS:
            raise ValueError(f"unknown variant '{value}', expected one of {', '.join(VARIANTS)}")
        return value


class LoggingConfig(BaseModel):
    """Logging configuration."""
    enabled: bool = True
    level: str = "INFO"
    file: str = "logs/gfdwa.log"


class BatchConfig(BaseModel):
    """Acceptance batch configuration."""
    workers: int = Field(default=2, ge=1, description="Scenarios simulated concurrently")
    expectations_file: str = Field(default="expectations.yaml", description="Expected success table inside the scenario directory")


class OutputConfig(BaseModel):
    """Run artifact configuration."""
    directory: str = "runs"
    write_candidates: bool = Field(default=True, description="Write per-step candidate endpoints as plot data")


class Config(BaseModel):
    """Main gfdwa configuration model."""
    gfdwa: GfDwaConfig = Field(default_factory=GfDwaConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    batch: BatchConfig = Field(default_factory=BatchConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)


def get_default_config_path() -> Path:
    """Get the default configuration file path in ~/.config/gfdwa/gfdwa.yaml"""
    return Path.home() / ".config" / "gfdwa" / "gfdwa.yaml"


def get_template_config_path() -> Path:
    """Get the path to the config template file."""
    return Path(__file__).parent.parent / "config-template.yaml"


def initialize_default_config(config_path: Optional[Path] = None) -> Path:
    """Copy the bundled template to the default (or given) configuration path."""
    from .logger import get_logger

    logger = get_logger()
    config_path = config_path or get_default_config_path()
    template_path = get_template_config_path()

    if not template_path.exists():
        raise FileNotFoundError(f"gfdwa: Template config file not found: {template_path}")

    config_path.parent.mkdir(parents=True, exist_ok=True)
    shutil.copy2(template_path, config_path)
    logger.info(f"gfdwa: Created default configuration at {config_path}")

    return config_path


def load_config(config_path: Optional[str] = None) -> Config:
    """Load and validate configuration from YAML file.

    Uses ~/.config/gfdwa/gfdwa.yaml as default location. Unlike an explicit
    path, a missing default file is not an error: built-in defaults apply.

    Args:
        config_path: Path to configuration file (optional)

    Returns:
        Validated configuration object

    Raises:
        FileNotFoundError: If an explicitly given config file doesn't exist
        ValueError: If config validation fails
    """
    from .logger import get_logger

    logger = get_logger()

    if config_path is None:
        config_file = get_default_config_path()
        if not config_file.exists():
            logger.debug("gfdwa: No configuration file found, using defaults")
            return Config()
    else:
        config_file = Path(config_path)

    if not config_file.exists():
        raise FileNotFoundError(f"gfdwa: Configuration file not found: {config_file}")

    try:
        logger.debug(f"gfdwa: Loading configuration from {config_file}")

        with open(config_file, 'r') as f:
            config_data = yaml.safe_load(f) or {}

        config = Config(**config_data)
        logger.debug("gfdwa: Configuration loaded and validated successfully")
        return config

    except yaml.YAMLError as e:
        raise ValueError(f"gfdwa: Invalid YAML in config file: {e}")
    except Exception as e:
        raise ValueError(f"gfdwa: Configuration validation failed: {e}")


def get_config_info() -> Dict[str, Any]:
    """Get information about gfdwa configuration paths and status."""
    default_path = get_default_config_path()
    template_path = get_template_config_path()

    return {
        "default_config_path": str(default_path),
        "default_config_exists": default_path.exists(),
        "template_path": str(template_path),
        "template_exists": template_path.exists(),
    }
