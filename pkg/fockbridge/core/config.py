from pydantic_settings import BaseSettings
from typing import Optional


class Settings(BaseSettings):
    # Output
    FOCKBRIDGE_OUT: Optional[str] = None

    # Run config used by run.py
    FOCKBRIDGE_CONFIG: Optional[str] = None

    # Logging
    FOCKBRIDGE_LOG_LEVEL: str = "INFO"

    # Size guards
    FOCKBRIDGE_MEMORY_CAP: int = 200_000
    FOCKBRIDGE_DENSE_CAP: int = 1_000_000

    # Check dispatch
    FOCKBRIDGE_WORKERS: int = 1

    class Config:
        env_file = ".env"
        case_sensitive = True


settings = Settings()
