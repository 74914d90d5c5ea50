"""Configuration management for pyextremal runs."""

import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "PYEXTREMAL_CONFIG"


class SearchConfig(BaseModel):
    """Node budgets, caps and parallelism of the exact searches."""
    node_budget: int = Field(default=10**8, ge=1, description="Node budget of AP and sub-Ramsey searches")
    ramsey_budget: int = Field(default=10**9, ge=1, description="Node budget of one Ramsey number computation")
    ramsey_cap: int = Field(default=12, ge=1, description="Largest n tried by the Ramsey search")
    multiplicity_budget: int = Field(default=10**7, ge=1, description="Node budget of exact multiplicity searches")
    workers: int = Field(default=1, ge=1, description="Processes used for independent search branches")

    class Config:
        json_schema_extra = {
            "example": {
                "node_budget": 100000000,
                "ramsey_budget": 1000000000,
                "ramsey_cap": 12,
                "workers": 4,
            }
        }


class SamplingConfig(BaseModel):
    """Randomised experiments."""
    seed: int = Field(default=0, description="Seed of the PCG64 generator")
    trials: int = Field(default=10_000, ge=1, description="Monte-Carlo trials")

    class Config:
        json_schema_extra = {"example": {"seed": 0, "trials": 10000}}


class OutputConfig(BaseModel):
    """How reports are written."""
    json_output: bool = Field(default=False, alias="json", description="Emit JSON instead of tables")
    indent: int = Field(default=2, ge=0, description="JSON indentation")

    class Config:
        populate_by_name = True
        json_schema_extra = {"example": {"json": True, "indent": 2}}


class ToolkitConfig(BaseModel):
    """Complete toolkit configuration."""
    search: SearchConfig = Field(default_factory=SearchConfig)
    sampling: SamplingConfig = Field(default_factory=SamplingConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    class Config:
        json_schema_extra = {
            "example": {
                "search": {"ramsey_cap": 10, "workers": 2},
                "sampling": {"seed": 7},
                "output": {"json": True},
            }
        }

    @classmethod
    def from_yaml(cls, yaml_path: str) -> "ToolkitConfig":
        """Load configuration from a YAML file.

        Args:
            yaml_path: Path to the YAML configuration file

        Returns:
            ToolkitConfig instance
        """
        with open(yaml_path, "r") as f:
            data = yaml.safe_load(f) or {}
        return cls(**data)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ToolkitConfig":
        return cls(**data)

    def to_yaml(self, output_path: str) -> None:
        """Save configuration to a YAML file.

        Args:
            output_path: Path to save the YAML file
        """
        with open(output_path, "w") as f:
            yaml.dump(self.to_dict(), f, default_flow_style=False)

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(by_alias=True)


def load_config(path: Optional[str] = None) -> ToolkitConfig:
    """Resolve the configuration.

    An explicit ``path`` wins; otherwise ``PYEXTREMAL_CONFIG`` (a ``.env`` in the
    working directory is loaded first) names the YAML file; otherwise defaults.
    """
    if path is None:
        load_dotenv(Path.cwd() / ".env")
        path = os.getenv(CONFIG_ENV_VAR)
    if not path:
        return ToolkitConfig()
    logger.debug(f"Loading configuration from {path}")
    return ToolkitConfig.from_yaml(path)
