"""
Application settings
"""
from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field


class Settings(BaseSettings):
    """Application settings"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False
    )

    # Enumeration limits
    enumeration_cap: int = Field(default=2 ** 20, description="Max elements materialized by an enumeration or closure")
    field_size_cap: int = Field(default=2 ** 20, description="Max p^k accepted by field_new")

    # Arithmetic tables
    field_table_limit: int = Field(default=2 ** 16, description="Fields up to this size get log/antilog tables")
    add_table_limit: int = Field(default=1024, description="Odd-characteristic fields up to this size get an addition table")
    action_table_limit: int = Field(default=2 ** 20, description="Materialize an action when |C|*|K| is at most this")

    # Structure search
    complement_search_limit: int = Field(default=20000, description="Element pairs tried for a non-cyclic complement")
    check_invariants: bool = Field(default=True, description="Run spectrum / mu / graph post-checks")

    # Logging
    log_level: str = Field(default="warning")
    log_format: str = Field(default="json")
    debug: bool = Field(default=False)

    # Application
    app_name: str = "pgx"
    app_version: str = "1.0.0"


settings = Settings()
