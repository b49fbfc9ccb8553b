"""Environment settings (LLM backend credentials, logging, run directory)"""

from pathlib import Path
from typing import Optional
from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables"""

    # Chat-completion backend (only read when the llm planner is selected)
    openai_api_key: Optional[str] = None
    openai_base_url: Optional[str] = None
    llm_model: str = "gpt-4"
    llm_temperature: float = 0.0
    llm_timeout: float = 60.0

    # Application Configuration
    log_level: str = "INFO"
    runs_dir: Path = Path("./runs")

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    def llm_configured(self) -> bool:
        """True when both endpoint and key are available"""
        return bool(self.openai_base_url) and bool(self.openai_api_key)


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance"""
    return Settings()
