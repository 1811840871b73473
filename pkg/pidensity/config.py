"""Configuration management for pidensity."""

import os
from pathlib import Path
from typing import List, Literal, Optional

import yaml
from pydantic import BaseModel, Field, field_validator, model_validator
from sympy import isprime

OutputFormat = Literal["text", "json", "csv"]

SUITES = (
    "all",
    "hall",
    "commuting",
    "sylow",
    "density",
    "simple",
    "torus",
    "sharpness",
    "alternating",
    "oracle",
    "j1",
)


class AppConfig(BaseModel):
    """Application configuration."""

    log_dir: Optional[str] = None
    log_level: str = "WARNING"


class ComputeConfig(BaseModel):
    """Limits for enumeration and searches."""

    cap: int = Field(default=2_000_000, ge=1)
    large_cap_threshold: int = 10_000_000
    subgroup_key_limit: int = 10_000
    hall_search_budget: int = 200_000


class HarnessConfig(BaseModel):
    """Verification suite settings."""

    max_pi_size: int = Field(default=3, ge=1)
    oracle_max_order: int = 2000
    torus_fields: List[int] = Field(default=[5, 7, 11, 13, 17, 19])
    quotient_index_limit: int = 1500
    j1_generators: Optional[str] = None


class OutputConfig(BaseModel):
    """Report rendering."""

    format: OutputFormat = "text"


class Config(BaseModel):
    """Main configuration model."""

    app: AppConfig = Field(default_factory=AppConfig)
    compute: ComputeConfig = Field(default_factory=ComputeConfig)
    harness: HarnessConfig = Field(default_factory=HarnessConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    @classmethod
    def from_file(cls, config_path: str) -> "Config":
        """Load configuration from YAML file, then apply environment overrides."""
        if not os.path.exists(config_path):
            return cls.from_env()

        with open(config_path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}

        return cls(**data).with_env()

    @classmethod
    def from_env(cls) -> "Config":
        """Load configuration from environment variables."""
        return cls().with_env()

    def with_env(self) -> "Config":
        # Only the default output format may come from the environment
        if fmt := os.getenv("PIDENSITY_FORMAT"):
            return self.model_copy(update={"output": OutputConfig(format=fmt)})  # type: ignore[arg-type]
        return self

    def ensure_directories(self) -> None:
        if self.app.log_dir:
            Path(self.app.log_dir).mkdir(parents=True, exist_ok=True)


class CliConfig(BaseModel):
    """One validated command-line invocation."""

    command: Literal["invariants", "hall", "verify", "catalogue"]
    group_expr: Optional[str] = None
    group_file: Optional[str] = None
    pi: List[int] = Field(default_factory=list)
    format: OutputFormat = "text"
    cap: int = Field(default=2_000_000, ge=1)
    allow_large_cap: bool = False
    large_cap_threshold: int = 10_000_000
    suite: Optional[str] = None
    max_pi: int = Field(default=3, ge=1)

    @field_validator("pi")
    @classmethod
    def _distinct_primes(cls, value: List[int]) -> List[int]:
        for p in value:
            if not isprime(p):
                raise ValueError(f"{p} is not prime")
        if len(set(value)) != len(value):
            raise ValueError("primes must be distinct")
        return value

    @field_validator("suite")
    @classmethod
    def _known_suite(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and value not in SUITES:
            raise ValueError(f"unknown suite {value!r}; choose from {', '.join(SUITES)}")
        return value

    @model_validator(mode="after")
    def _check_group_and_cap(self) -> "CliConfig":
        if self.group_expr is not None and self.group_file is not None:
            raise ValueError("give a group expression or --file, not both")
        if self.command in ("invariants", "hall") and self.group_expr is None and self.group_file is None:
            raise ValueError(f"{self.command} needs a group expression or --file")
        if self.cap > self.large_cap_threshold and not self.allow_large_cap:
            raise ValueError(
                f"--cap {self.cap} is above {self.large_cap_threshold}; pass --allow-large-cap"
            )
        return self
