"""Application settings."""

from pydantic import Field
from pydantic_settings import BaseSettings
from pydantic_settings import SettingsConfigDict

from src.core.constants import APP_NAME
from src.core.constants import DEFAULT_FLOAT_TOLERANCE
from src.core.constants import DEFAULT_MAX_AMPLITUDE_ORDER
from src.core.constants import DEFAULT_NODE_BUDGET
from src.core.constants import ENV_PREFIX


class Settings(BaseSettings):
    """Application settings with validation."""

    model_config = SettingsConfigDict(
        env_prefix=ENV_PREFIX,
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="forbid",
    )

    # =============================================================================
    # COMPUTATION
    # =============================================================================
    # Worker processes for independent work items (nonlocality cuts)
    THREADS: int = Field(default=1, ge=1, le=256)

    # Cover-search node budget for the unextendibility search
    NODE_BUDGET: int = Field(default=DEFAULT_NODE_BUDGET, ge=1)

    # Zero threshold of the float cross-check backend
    FLOAT_TOLERANCE: float = Field(default=DEFAULT_FLOAT_TOLERANCE, gt=0.0, lt=1.0)

    # Largest amplitude order read from an input document
    MAX_AMPLITUDE_ORDER: int = Field(default=DEFAULT_MAX_AMPLITUDE_ORDER, ge=1)

    # Seed for search tie-breaks
    SEED: int = Field(default=0, ge=0)

    # =============================================================================
    # LOGGING
    # =============================================================================
    LOG_LEVEL: str = Field(
        default="INFO",
        pattern="^(TRACE|DEBUG|INFO|SUCCESS|WARNING|ERROR|CRITICAL)$",
    )
    LOG_PATH: str = Field(default="")
    LOG_FILENAME: str = Field(default=f"{APP_NAME}.log")
    LOG_ROTATION: str = Field(default="50 MB")
    LOG_RETENTION: str = Field(default="3 months")

    # =============================================================================
    # MONITORING (Optional)
    # =============================================================================
    SENTRY_DSN: str = Field(default="")
    SENTRY_SAMPLE_RATE: float = Field(default=1.0, ge=0.0, le=1.0)
    SENTRY_TRACES_SAMPLE_RATE: float = Field(default=0.0, ge=0.0, le=1.0)

    @property
    def parallel(self) -> bool:
        """Check if work may be spread over worker processes.

        Returns:
            True if more than one worker is allowed.
        """
        return self.THREADS > 1


settings = Settings()  # noqa
