"""
Shared configuration for all apps.
"""

from functools import lru_cache
from pydantic_settings import BaseSettings


class CommonSettings(BaseSettings):
    """Settings shared across all apps."""

    # Environment
    environment: str = "development"
    log_level: str = "INFO"

    # Randomized routines (witness search, spot checks, sampling)
    seed: int = 0

    # Field arithmetic
    table_limit: int = 1 << 16

    # Metrics
    enable_metrics: bool = True

    class Config:
        env_file = ".env"
        env_prefix = "QC_"
        case_sensitive = False


class AnalysisSettings(CommonSettings):
    """Spectral analysis and bound search settings."""

    max_nu: int = 1
    eigencode_enum_limit: int = 1 << 20
    witness_combination_size: int = 3
    witness_random_trials: int = 1000
    spot_check_samples: int = 100
    bound_workers: int = 1


class DecodingSettings(CommonSettings):
    """Decoder settings."""

    verify_membership: bool = True


class OracleSettings(CommonSettings):
    """Brute-force oracle settings."""

    distance_guard: int = 1 << 18
    nearest_guard: int = 1 << 16
    sample_count: int = 10_000


class CliSettings(CommonSettings):
    """Command-line front end settings."""

    report_indent: int = 2


# Cached getters for each app
@lru_cache()
def get_common_settings() -> CommonSettings:
    return CommonSettings()


@lru_cache()
def get_analysis_settings() -> AnalysisSettings:
    return AnalysisSettings()


@lru_cache()
def get_decoding_settings() -> DecodingSettings:
    return DecodingSettings()


@lru_cache()
def get_oracle_settings() -> OracleSettings:
    return OracleSettings()


@lru_cache()
def get_cli_settings() -> CliSettings:
    return CliSettings()
